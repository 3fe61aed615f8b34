#include <doctest.h>

#include "oslice/polynomial.hpp"
#include "test_helpers.hpp"

using namespace oslice;
using namespace oslice::testing;

using Poly = OctPolynomial<Rational>;
using Oct = Octonion<Rational>;

namespace {

Poly var(SliceSignature sig, int v) { return Poly::variable(sig, v); }

}  // namespace

TEST_CASE("derivative examples") {
  SliceSignature sig(1);  // vars x0, x1, r
  Poly x0 = var(sig, 0), x1 = var(sig, 1);

  // d/dx0 (x0^2) = 2 x0
  CHECK(((x0 * x0).derivative(0) - Rational(2) * x0).is_zero());

  // D_{x_p}(x0 x1) = x1 + x0 e1
  Poly p = x0 * x1;
  Poly want = x1 + (Rational(1) * x0).left_scaled(Oct::basis(1));
  CHECK((apply_Dxp(p) - want).is_zero());

  // Lap(x0^2) = 2
  CHECK((laplacian_xp(x0 * x0) - Poly::constant(sig, Oct(Rational(2)))).is_zero());

  CHECK_THROWS_AS(x0.derivative(5), std::invalid_argument);
}

TEST_CASE("no zero coefficients are stored") {
  SliceSignature sig(0);
  Poly a = var(sig, 0);
  Poly diff = a - a;
  CHECK(diff.is_zero());
  CHECK(diff.terms().empty());
  Poly b = a + (-a);
  CHECK(b.terms().empty());
}

TEST_CASE("coefficient order is preserved in products") {
  SliceSignature sig(0);
  Poly pa = Poly::constant(sig, Oct::basis(1));
  Poly pb = Poly::constant(sig, Oct::basis(2));
  auto ab = (pa * pb).terms().begin()->second;
  auto ba = (pb * pa).terms().begin()->second;
  CHECK(ab == Oct::basis(3));
  CHECK(ba == -Oct::basis(3));
}

TEST_CASE("evaluation is exact and memoizes powers") {
  SliceSignature sig(1);
  Poly p = var(sig, 0) * var(sig, 0) * var(sig, 1) + Rational(1, 2) * var(sig, 2);
  VectorX<Rational> x(3);
  x << Rational(2, 3), Rational(-1, 2), Rational(4);
  // (2/3)^2 * (-1/2) + 4/2 = -2/9 + 2 = 16/9
  CHECK(p.eval(x) == Oct(Rational(16, 9)));
}

TEST_CASE("parity predicates") {
  SliceSignature sig(1);
  Poly r = var(sig, 2);
  CHECK((r * r).even_in_r());
  CHECK(r.odd_in_r());
  CHECK_FALSE((r + r * r).even_in_r());
  CHECK(var(sig, 0).even_in_r());
  CHECK_FALSE(var(sig, 0).depends_on_r());
}

TEST_CASE("conjugated Dirac operator") {
  SliceSignature sig(2);
  // conj(D)(x1) = -e1, D(x1) = e1
  Poly x1 = var(sig, 1);
  CHECK((apply_Dxp(x1) - Poly::constant(sig, Oct::basis(1))).is_zero());
  CHECK((apply_Dxp_conj(x1) + Poly::constant(sig, Oct::basis(1))).is_zero());
  // both fix d/dx0
  Poly x0 = var(sig, 0);
  CHECK((apply_Dxp_conj(x0) - Poly::constant(sig, Oct::one())).is_zero());
}

TEST_CASE("signature mismatch is rejected") {
  Poly a = var(SliceSignature(1), 0);
  Poly b = var(SliceSignature(2), 0);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
}
