// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <vector>

#include "oslice/cauchy.hpp"
#include "oslice/registry.hpp"
#include "oslice/taylor.hpp"
#include "oslice/verify.hpp"

using namespace oslice;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double max_gap(const Octonion<double>& a, const Octonion<double>& b) {
  double m = 0;
  for (int i = 0; i < 8; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double rel_gap(const Octonion<double>& got, const Octonion<double>& want) {
  return norm(got - want) / std::max(1.0, norm(want));
}

// ---- 1. algebra exactness on 10^4 samples --------------------------------

Criterion criterion1() {
  Criterion c;
  const auto t0 = Clock::now();
  Rng rng(20240811);
  using Oct = Octonion<Rational>;
  bool ok = true;
  for (int s = 0; s < 10000 && ok; ++s) {
    const Oct a = random_octonion<Rational>(rng);
    const Oct b = random_octonion<Rational>(rng);
    const Oct x = random_octonion<Rational>(rng);
    ok &= associator(a, a, b) == Oct::zero();
    ok &= associator(a, b, b) == Oct::zero();
    ok &= associator(conj(a), a, b) == Oct::zero();
    const Oct axa = mul(mul(a, x), a);
    ok &= mul(a, mul(x, mul(a, b))) == mul(axa, b);
    ok &= mul(mul(mul(a, x), b), x) == mul(a, mul(x, mul(b, x)));
    ok &= mul(mul(a, x), mul(b, a)) == mul(mul(a, mul(x, b)), a);
    ok &= norm_sq(mul(a, b)) == norm_sq(a) * norm_sq(b);
  }
  const double dt = seconds_since(t0);
  c.require(ok, "an exact identity failed");
  c.require(dt <= 5.0, "runtime over 5 s");
  c.note("10000 samples in " + format_double(dt) + " s");
  return c;
}

// ---- 2. non-associativity witnesses ---------------------------------------

Criterion criterion2() {
  Criterion c;
  using Oct = Octonion<Rational>;
  const Oct e1 = Oct::basis(1), e2 = Oct::basis(2), e4 = Oct::basis(4);
  c.require(associator(e1, e2, e4) == Rational(2) * Oct::basis(7),
            "associator(e1,e2,e4) != 2 e7");
  const auto composed = compose(left_mul(e1), left_mul(e2)).apply(e4);
  const auto of_product = left_mul(mul(e1, e2)).apply(e4);
  c.require(composed == -Oct::basis(7) && of_product == Oct::basis(7) &&
                composed != of_product,
            "left-multiplication composition witness failed");
  return c;
}

// ---- 3. Fueter core -------------------------------------------------------

Criterion criterion3() {
  Criterion c;
  const auto t0 = Clock::now();
  using S = Rational;
  for (int p : {1, 2}) {
    const SliceSignature sig(p);
    Rng rng(777 + p);
    std::vector<VectorX<S>> bases;  // 20 rational (x_p, r) bases
    for (int i = 0; i < 20; ++i) {
      VectorX<S> b(sig.p + 2);
      for (int v = 0; v <= sig.p; ++v) b[v] = rng.next_rational();
      S r = rng.next_rational(3, 2);
      b[sig.p + 1] = r.sign() < 0 ? -r : r;
      bases.push_back(b);
    }
    const auto omegas = sample_sphere<S>(sig, 8, 9000 + p);
    auto split_at = [&](const VectorX<S>& b, const Octonion<S>& w) {
      SplitPoint<S> pt;
      pt.sig = sig;
      pt.xp = b.head(sig.p + 1);
      pt.r = b[sig.p + 1];
      pt.omega = w;
      return pt;
    };

    std::vector<MultiIndex> ks;
    for (int d = 0; d <= 4; ++d)
      for (auto& k : multi_indices_of_degree(p + 1, d)) ks.push_back(k);

    bool v_eq_p = true, trees_ok = true, strat_ok = true, rec_ok = true, gcr_ok = true;
    for (const auto& k : ks) {
      const int d = multi_abs(k);
      const auto vk = v_poly<S>(k, sig);
      std::vector<StemFunction<S>> vk_minus;
      for (int i = 0; i <= sig.p; ++i)
        vk_minus.push_back(v_poly_or_zero<S>(minus_unit(k, i), sig));
      const AssocTree rtree = AssocTree::r_fold(std::max(1, d));

      {
        auto res = cr_residual(vk);
        if (!res.first.is_zero() || !res.second.is_zero()) gcr_ok = false;
      }

      for (size_t bi = 0; bi < bases.size(); ++bi) {
        // full 20 x 8 grid for the pointwise identities
        for (const auto& w : omegas) {
          const auto pt = split_at(bases[bi], w);
          const auto v_val = vk.eval_split(pt);
          if (fueter_poly_eval(k, pt, rtree) != v_val) v_eq_p = false;
          if (d >= 1) {
            Octonion<S> left, right;
            for (int i = 0; i <= sig.p; ++i) {
              const auto z = fueter_var(i, pt);
              const auto v = vk_minus[i].eval_split(pt);
              left += mul(z, v);
              right += mul(v, z);
            }
            const auto target = v_val * S(d);
            if (left != target || right != target) rec_ok = false;
          }
        }
        // association trees and enumeration strategies on the 20-point grid
        const auto pt = split_at(bases[bi], omegas[bi % omegas.size()]);
        if (d >= 2) {
          const auto ref = fueter_poly_eval(k, pt, rtree);
          for (const auto& tree : AssocTree::enumerate(d))
            if (fueter_poly_eval(k, pt, tree) != ref) trees_ok = false;
        }
        if (d >= 1 &&
            fueter_poly_eval(k, pt, rtree, FueterSide::left, PermutationStrategy::distinct) !=
                fueter_poly_eval(k, pt, rtree, FueterSide::left, PermutationStrategy::all))
          strat_ok = false;
      }
    }
    c.require(v_eq_p, "V_k != P_k at p=" + std::to_string(p));
    c.require(trees_ok, "association-order dependence at p=" + std::to_string(p));
    c.require(strat_ok, "permutation strategies disagree at p=" + std::to_string(p));
    c.require(rec_ok, "recurrence failed at p=" + std::to_string(p));
    c.require(gcr_ok, "cr_residual(V_k) != 0 at p=" + std::to_string(p));
  }
  const double dt = seconds_since(t0);
  c.require(dt <= 60.0, "runtime over 60 s");
  c.note(format_double(dt) + " s");
  return c;
}

// ---- 4. operator consistency ----------------------------------------------

Criterion criterion4() {
  Criterion c;
  const SliceSignature sig(1);
  Rng rng(4242);
  const FDScheme scheme;  // order 4, h = 1e-4

  double agree_err = 0;
  const auto omegas = sample_sphere<double>(sig, 5, 11);
  for (int trial = 0; trial < 5; ++trial) {
    // degree <= 4 stems, generally not monogenic
    OctPolynomial<Rational> f1(sig), f2(sig);
    for (int t = 0; t < 3; ++t) {
      Exponents e(sig.p + 2, 0);
      e[0] = static_cast<int>(rng.next_int(0, 2));
      e[1] = static_cast<int>(rng.next_int(0, 2));
      e[sig.p + 1] = 2 * static_cast<int>(rng.next_int(0, 1));
      f1.add_term(e, random_octonion<Rational>(rng));
      Exponents eo = e;
      eo[sig.p + 1] = 1;
      f2.add_term(eo, random_octonion<Rational>(rng));
    }
    const auto stem = to_double(StemFunction<Rational>(f1, f2));
    const FunctionHandle h = stem_handle(stem);
    for (int s = 0; s < 10; ++s) {
      SplitPoint<double> pt;
      pt.sig = sig;
      pt.xp.resize(2);
      pt.xp << rng.next_double() - 0.5, rng.next_double() - 0.5;
      pt.r = 0.8 * rng.next_double();
      pt.omega = omegas[s % omegas.size()];
      SlicePoint<double> xp{pt.xp, pt.r};
      agree_err = std::max(agree_err, max_gap(d_omega_exact(stem, xp, pt.omega),
                                              d_omega_numeric(h, pt, scheme).value));
    }
  }
  c.require(agree_err <= 1e-6, "exact/numeric disagreement " + format_double(agree_err));

  // Example za: D_omega(z1 e2) = 2 e3 at omega = e7
  FunctionHandle za{sig,
                    [sig](const Octonion<double>& x) {
                      return mul(fueter_var(1, split(x, sig)), Octonion<double>::basis(2));
                    },
                    nullptr,
                    "z1e2"};
  SplitPoint<double> pt;
  pt.sig = sig;
  pt.xp.resize(2);
  pt.xp << 0.4, -0.3;
  pt.r = 0.6;
  pt.omega = Octonion<double>::basis(7);
  const double za_err =
      max_gap(d_omega_numeric(za, pt, scheme).value, 2.0 * Octonion<double>::basis(3));
  c.require(za_err <= 1e-8, "za witness error " + format_double(za_err));

  // right derivative: z_l D_omega = 2 e_l (l >= 1; z_0 is two-sided monogenic)
  double right_err = 0;
  for (int p : {1, 2}) {
    const SliceSignature s(p);
    const auto ws = sample_sphere<double>(s, 3, 17 + p);
    for (const auto& w : ws) {
      SplitPoint<double> q;
      q.sig = s;
      q.xp = VectorX<double>::Constant(p + 1, 0.2);
      q.r = 0.5;
      q.omega = w;
      for (int ell = 1; ell <= p; ++ell) {
        MultiIndex k(p + 1, 0);
        k[ell] = 1;
        FunctionHandle z = stem_handle(v_poly<Rational>(k, s));
        right_err = std::max(right_err, max_gap(d_omega_right_numeric(z, q, scheme).value,
                                                2.0 * Octonion<double>::basis(ell)));
      }
      MultiIndex k0(p + 1, 0);
      k0[0] = 1;
      FunctionHandle z0 = stem_handle(v_poly<Rational>(k0, s));
      right_err = std::max(right_err, max_gap(d_omega_right_numeric(z0, q, scheme).value,
                                              Octonion<double>::zero()));
    }
  }
  c.require(right_err <= 1e-8, "right-derivative error " + format_double(right_err));
  c.note("agree=" + format_double(agree_err) + " za=" + format_double(za_err) +
         " right=" + format_double(right_err));
  return c;
}

// ---- 5. representation formulas, exact ------------------------------------

Criterion criterion5() {
  Criterion c;
  using S = Rational;
  for (int p : {1, 2}) {
    const SliceSignature sig(p);
    Rng rng(555 + p);
    // a degree-5 CK stem with octonion coefficients
    OctPolynomial<S> f0(sig);
    for (int t = 0; t < 4; ++t) {
      Exponents e(sig.p + 2, 0);
      int budget = 5;
      for (int i = 0; i <= sig.p && budget > 0; ++i) {
        e[i] = static_cast<int>(rng.next_int(0, budget));
        budget -= e[i];
      }
      f0.add_term(e, random_octonion<S>(rng));
    }
    const auto f = ck_extension(f0);
    const auto etas = sample_sphere<S>(sig, 3, 1000 + p);
    const auto omegas = sample_sphere<S>(sig, 3, 2000 + p);

    bool rep_ok = true, two_ok = true, eta_ok = true;
    for (int s = 0; s < 100; ++s) {
      VectorX<S> coords(sig.p + 2);
      for (int v = 0; v <= sig.p; ++v) coords[v] = rng.next_rational();
      S r = rng.next_rational(3, 2);
      coords[sig.p + 1] = r.sign() < 0 ? -r : r;
      VectorX<S> reflected = coords;
      reflected[sig.p + 1] = -coords[sig.p + 1];

      const auto& eta = etas[s % etas.size()];
      const auto fplus = f.eval_slice(coords, eta);
      const auto fminus = f.eval_slice(reflected, eta);
      auto [f1, f2] = stem_from_slices(fplus, fminus, eta);

      for (const auto& w : omegas) {
        const auto direct = f.eval_slice(coords, w);
        if (representation_formula(fplus, fminus, eta, w) != direct) rep_ok = false;
        const auto& w2 = omegas[(s + 1) % omegas.size()];
        if (!(eta == w2)) {
          const auto f_on_w2 = f.eval_slice(coords, w2);
          if (rep_formula_two_point(fplus, f_on_w2, eta, w2, w) != direct) two_ok = false;
        }
      }
      for (const auto& eta2 : etas) {
        auto [g1, g2] = stem_from_slices(f.eval_slice(coords, eta2),
                                         f.eval_slice(reflected, eta2), eta2);
        if (!(g1 == f1 && g2 == f2)) eta_ok = false;
      }
    }
    c.require(rep_ok, "representation formula mismatch at p=" + std::to_string(p));
    c.require(two_ok, "two-point formula mismatch at p=" + std::to_string(p));
    c.require(eta_ok, "extracted stem depends on eta at p=" + std::to_string(p));
  }
  return c;
}

// ---- 6. Cauchy formula I ---------------------------------------------------

Criterion criterion6() {
  Criterion c;
  const auto t0 = Clock::now();
  double worst = 0;
  for (int p : {0, 1, 2}) {
    const SliceSignature sig(p);
    Rng rng(6000 + p);
    const auto eta = sample_sphere<double>(sig, 1, 60 + p)[0];
    const BallSlice ball(sig, eta, 1.0);
    const SphereRule rule(p + 2, 48);  // pinned level for n <= 4

    std::vector<MultiIndex> ks;
    for (int d = 0; d <= 3; ++d)
      for (auto& k : multi_indices_of_degree(p + 1, d)) ks.push_back(k);

    for (const auto& k : ks) {
      const auto stem = to_double(v_poly<Rational>(k, sig));
      const SliceFn f = on_slice(stem, eta);
      for (int s = 0; s < 10; ++s) {
        Eigen::VectorXd raw(p + 2);
        double nsq = 0;
        for (int v = 0; v < p + 2; ++v) {
          raw[v] = 2.0 * rng.next_double() - 1.0;
          nsq += raw[v] * raw[v];
        }
        raw *= 0.5 * rng.next_double() / std::max(1.0, std::sqrt(nsq));
        SplitPoint<double> x;
        x.sig = sig;
        x.xp = raw.head(p + 1);
        x.r = std::abs(raw[p + 1]);
        x.omega = raw[p + 1] >= 0 ? eta : -eta;
        worst = std::max(worst, rel_gap(cauchy_reconstruct(f, ball, x, rule),
                                        stem.eval_split(x)));
      }
    }

    // error decreases when the level doubles (pre-asymptotic ladder)
    const auto stem = to_double(v_poly<Rational>(ks.back(), sig));
    const SliceFn f = on_slice(stem, eta);
    SplitPoint<double> x;
    x.sig = sig;
    x.xp = VectorX<double>::Constant(p + 1, 0.25);
    x.r = 0.3;
    x.omega = eta;
    const auto ref = stem.eval_split(x);
    double prev = -1;
    bool monotone = true;
    std::string ladder;
    for (int level : {6, 12, 24}) {
      const double e = rel_gap(cauchy_reconstruct(f, ball, x, SphereRule(p + 2, level)), ref);
      if (prev >= 0 && e > 1.1 * prev + 1e-13) monotone = false;
      ladder += format_double(e) + " ";
      prev = e;
    }
    c.require(monotone, "no error decay under level doubling at p=" + std::to_string(p) +
                            " [" + ladder + "]");
  }
  const double dt = seconds_since(t0);
  c.require(worst <= 1e-7, "worst relative error " + format_double(worst));
  c.require(dt <= 120.0, "runtime over 120 s");
  c.note("max_rel_err=" + format_double(worst) + " in " + format_double(dt) + " s");
  return c;
}

// ---- 7. Cauchy-Pompeiu I ---------------------------------------------------

Criterion criterion7() {
  Criterion c;
  const SliceSignature sig(1);
  Rng rng(7000);
  const auto eta = sample_sphere<double>(sig, 1, 70)[0];
  const BallSlice ball(sig, eta, 1.0);
  const SphereRule rule(3, 48);
  const BallRule vrule(3, 48);

  OctPolynomial<Rational> r = OctPolynomial<Rational>::variable(sig, 2);
  const auto r2 = to_double(StemFunction<Rational>(r * r, OctPolynomial<Rational>(sig)));
  const auto xq = to_double(StemFunction<Rational>(OctPolynomial<Rational>(sig), r));

  double worst = 0;
  for (const auto& stem : {r2, xq}) {
    const SliceFn f = on_slice(stem, eta);
    const SliceFn df = d_omega_on_slice(stem, eta);
    for (int s = 0; s < 4; ++s) {
      SplitPoint<double> x;
      x.sig = sig;
      x.xp.resize(2);
      x.xp << 0.4 * rng.next_double(), 0.4 * rng.next_double();
      x.r = 0.4 * rng.next_double();
      x.omega = eta;
      worst = std::max(worst,
                       rel_gap(cauchy_pompeiu(f, df, ball, x, rule, vrule), stem.eval_split(x)));
    }
  }
  c.require(worst <= 1e-5, "worst relative error " + format_double(worst));
  c.note("max_rel_err=" + format_double(worst));
  return c;
}

// ---- 8. Cauchy formula II / operator kernel --------------------------------

Criterion criterion8() {
  Criterion c;
  const SliceSignature sig(1);
  const auto eta1 = Octonion<double>::basis(2);
  const auto eta2 = Octonion<double>::basis(4);
  const SphereRule rule(3, 48);
  const auto stem = to_double(v_poly<Rational>(MultiIndex{2, 1}, sig));

  Octonion<double> omega;
  omega.coeff_ref(3) = std::sqrt(0.5);
  omega.coeff_ref(4) = std::sqrt(0.5);
  SplitPoint<double> x;
  x.sig = sig;
  x.xp.resize(2);
  x.xp << 0.3, 0.1;
  x.r = 0.2;
  x.omega = omega;

  const BallSlice b1(sig, eta1, 1.0), b2(sig, eta2, 1.0);
  const auto v1 = cauchy_reconstruct_global(on_slice(stem, eta1), b1, x, rule);
  const auto v2 = cauchy_reconstruct_global(on_slice(stem, eta2), b2, x, rule);
  const double off_err = rel_gap(v1, stem.eval_split(x));
  const double eta_gap = max_gap(v1, v2);
  c.require(off_err <= 1e-6, "off-slice error " + format_double(off_err));
  c.require(eta_gap <= 2e-7, "eta dependence " + format_double(eta_gap));

  SplitPoint<double> xs = x;
  xs.omega = eta1;
  const auto reduction_gap = max_gap(
      cauchy_reconstruct_global(on_slice(stem, eta1), b1, xs, rule),
      cauchy_reconstruct(on_slice(stem, eta1), b1, xs, rule));
  c.require(reduction_gap <= 1e-12, "omega=eta reduction gap " + format_double(reduction_gap));
  c.note("off=" + format_double(off_err) + " eta_gap=" + format_double(eta_gap) +
         " reduction=" + format_double(reduction_gap));
  return c;
}

// ---- 9. mean value ---------------------------------------------------------

Criterion criterion9() {
  Criterion c;
  double worst = 0;
  for (int p : {0, 1, 2}) {
    const SliceSignature sig(p);
    const auto eta = sample_sphere<double>(sig, 1, 90 + p)[0];
    Eigen::VectorXd center(p + 2);
    for (int i = 0; i < p + 2; ++i) center[i] = (i % 2 ? -0.1 : 0.2);
    const BallSlice ball(sig, eta, center, 0.5);
    const SphereRule rule(p + 2, 48);
    for (int d = 0; d <= 2; ++d)
      for (const auto& k : multi_indices_of_degree(p + 1, d)) {
        const auto stem = to_double(v_poly<Rational>(k, sig));
        worst = std::max(worst, rel_gap(mean_value(on_slice(stem, eta), ball, rule),
                                        stem.eval_slice(center, eta)));
      }
  }
  c.require(worst <= 1e-8, "worst relative error " + format_double(worst));
  c.note("max_rel_err=" + format_double(worst));
  return c;
}

// ---- 10. Taylor ------------------------------------------------------------

Criterion criterion10() {
  Criterion c;
  // reconstruction and tail accounting at p = 1
  {
    const SliceSignature sig(1);
    const auto eta = sample_sphere<double>(sig, 1, 100)[0];
    const BallSlice ball(sig, eta, 1.0);
    const SphereRule rule(3, 48);
    const auto stem = to_double(v_poly<Rational>(MultiIndex{2, 1}, sig));
    const SliceFn f = on_slice(stem, eta);
    SplitPoint<double> x;
    x.sig = sig;
    x.xp.resize(2);
    x.xp << 0.3, 0.15;
    x.r = 0.2;
    x.omega = eta;
    const auto result = taylor_reconstruct(f, x, 3, ball, rule);
    const auto ref = stem.eval_split(x);
    const double rec_err = norm(result.reconstruction - ref);
    c.require(rec_err <= 1e-6, "reconstruction error " + format_double(rec_err));

    Octonion<double> tails_sum;
    for (const auto& t : result.tails) tails_sum += t.value;
    const auto plain = result.reconstruction - tails_sum;
    const double account = max_gap(ref - plain, tails_sum);
    c.require(account <= 2e-6, "tail accounting gap " + format_double(account));

    // octonion-coefficient stem: nonzero tails, same accounting identity
    OctPolynomial<Rational> f0(sig);
    f0.add_term(Exponents{0, 3, 0}, Octonion<Rational>::basis(4));
    const auto stem_a = to_double(ck_extension(f0));
    const auto result_a = taylor_reconstruct(on_slice(stem_a, eta), x, 3, ball, rule);
    const auto ref_a = stem_a.eval_split(x);
    const double rec_a = norm(result_a.reconstruction - ref_a);
    Octonion<double> tails_a;
    double max_tail = 0;
    for (const auto& t : result_a.tails) {
      tails_a += t.value;
      max_tail = std::max(max_tail, norm(t.value));
    }
    const double account_a = max_gap(ref_a - (result_a.reconstruction - tails_a), tails_a);
    c.require(rec_a <= 1e-6, "oct-coefficient reconstruction " + format_double(rec_a));
    c.require(account_a <= 2e-6, "oct-coefficient accounting " + format_double(account_a));
    c.require(max_tail > 1e-4, "tails unexpectedly vanish");
    c.note("rec=" + format_double(rec_err) + " account=" + format_double(account) +
           " max_tail=" + format_double(max_tail));
  }
  // p = 0: all tails vanish
  {
    const SliceSignature sig(0);
    const auto eta = sample_sphere<double>(sig, 1, 101)[0];
    const BallSlice ball(sig, eta, 1.0);
    const SphereRule rule(2, 48);
    const auto stem = to_double(ck_extension(OctPolynomial<Rational>::xp_monomial(sig, {3})));
    const SliceFn f = on_slice(stem, eta);
    SplitPoint<double> x;
    x.sig = sig;
    x.xp.resize(1);
    x.xp << 0.3;
    x.r = 0.25;
    x.omega = eta;
    double max_tail = 0;
    const auto result = taylor_reconstruct(f, x, 3, ball, rule);
    for (const auto& t : result.tails) max_tail = std::max(max_tail, norm(t.value));
    const double rec_err = norm(result.reconstruction - stem.eval_split(x));
    c.require(max_tail <= 1e-9, "p=0 tails " + format_double(max_tail));
    c.require(rec_err <= 1e-6, "p=0 reconstruction " + format_double(rec_err));
  }
  // kernel series: monotone decay at ratio 1/2 and left/right agreement
  for (int p : {0, 1}) {
    const SliceSignature sig(p);
    const auto eta = sample_sphere<double>(sig, 1, 102 + p)[0];
    Eigen::VectorXd y(p + 2);
    for (int i = 0; i < p + 2; ++i) y[i] = 0.9 - 0.2 * i;
    Eigen::VectorXd x = 0.5 * y;
    const auto target = kernel_E(embed_slice(y, eta, p) - embed_slice(x, eta, p), p);
    double prev = -1, lr = 0;
    bool monotone = true;
    for (int K = 0; K <= 8; K += 2) {
      const auto part = kernel_series_partial(x, y, eta, sig, K);
      lr = std::max(lr, max_gap(part.left, part.right));
      const double e = norm(part.left - target);
      if (prev >= 0 && e > prev && e > 1e-13) monotone = false;
      prev = e;
    }
    c.require(monotone, "series error not decreasing at p=" + std::to_string(p));
    c.require(lr <= 1e-9, "left/right gap " + format_double(lr));
  }
  return c;
}

// ---- 11. CLI reproducibility ------------------------------------------------

std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = std::string(OSLICE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  return {WEXITSTATUS(pclose(pipe)), out};
}

Criterion criterion11() {
  Criterion c;
  const std::vector<std::string> runs = {
      "table",
      "--json --seed 42 verify --suite algebra --samples 200",
      "--json --seed 7 verify --suite fueter --p 1 --max-degree 3 --points 6",
      "cauchy --p 1 --eta e2 --radius 1 --level 16 --target stem:V21 --point 0.3,0.1,0.2",
      "taylor --p 0 --K 3 --target poly:x^3 --level 16 --point 0.2,0.1",
      "--json --seed 3 maxmod --p 1 --target stem:V20 --samples 300",
  };
  for (const auto& args : runs) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    c.require(a.first == 0, "exit code " + std::to_string(a.first) + " for: " + args);
    c.require(!a.second.empty() && a.second == b.second, "output not byte-identical for: " + args);
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Criterion (*fn)();
  };
  const std::vector<Entry> criteria = {
      {"1 algebra exactness (10^4 samples, <= 5 s)", criterion1},
      {"2 non-associativity witnesses", criterion2},
      {"3 fueter core (V=P, trees, recurrence, GCR; <= 60 s)", criterion3},
      {"4 operator consistency (exact vs numeric, za, right derivative)", criterion4},
      {"5 representation formulas, exact", criterion5},
      {"6 cauchy formula I (rel err <= 1e-7, decay; <= 120 s)", criterion6},
      {"7 cauchy-pompeiu I (non-monogenic, <= 1e-5)", criterion7},
      {"8 cauchy formula II / operator kernel", criterion8},
      {"9 mean value (<= 1e-8)", criterion9},
      {"10 taylor (reconstruction, tails, kernel series)", criterion10},
      {"11 CLI byte reproducibility", criterion11},
  };

  int failures = 0;
  for (const auto& entry : criteria) {
    Criterion result;
    try {
      result = entry.fn();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    std::cout << (result.pass ? "PASS" : "FAIL") << " criterion " << entry.name;
    if (!result.detail.empty()) std::cout << "  [" << result.detail << "]";
    std::cout << "\n" << std::flush;
    if (!result.pass) ++failures;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
