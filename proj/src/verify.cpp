#include "oslice/verify.hpp"

#include <cmath>

#include "oslice/calculus.hpp"
#include "oslice/fueter.hpp"
#include "oslice/random.hpp"

namespace oslice {

namespace {

bool close(const Octonion<double>& a, const Octonion<double>& b, double tol, double scale,
           double* err_out) {
  double err = 0;
  for (int i = 0; i < 8; ++i) err = std::max(err, std::abs(a[i] - b[i]));
  if (err_out) *err_out = std::max(*err_out, err);
  return err <= tol * std::max(1.0, scale);
}

template <class S>
OctPolynomial<S> random_xp_poly(SliceSignature sig, Rng& rng, int degree, int terms) {
  OctPolynomial<S> f0(sig);
  for (int t = 0; t < terms; ++t) {
    Exponents e(sig.p + 2, 0);
    int budget = rng.next_int(0, degree);
    for (int i = 0; i <= sig.p && budget > 0; ++i) {
      e[i] = static_cast<int>(rng.next_int(0, budget));
      budget -= e[i];
    }
    f0.add_term(e, random_octonion<S>(rng));
  }
  return f0;
}

}  // namespace

SuiteReport run_algebra_suite(const VerifyOptions& opt) {
  SuiteReport rep{"algebra", opt.mode, opt.seed, {}};
  Rng rng(opt.seed);
  const int n = opt.samples;

  if (opt.mode == "exact") {
    bool artin = true, moufang = true, normmul = true, alt = true;
    for (int s = 0; s < n; ++s) {
      auto a = random_octonion<Rational>(rng);
      auto b = random_octonion<Rational>(rng);
      auto c = random_octonion<Rational>(rng);
      using Oct = Octonion<Rational>;
      if (associator(a, a, b) != Oct::zero()) artin = false;
      if (associator(conj(a), a, b) != Oct::zero()) artin = false;
      const Oct aba = mul(mul(a, b), a);
      if (mul(a, mul(b, mul(a, c))) != mul(aba, c)) moufang = false;
      if (mul(mul(mul(a, b), c), b) != mul(a, mul(b, mul(c, b)))) moufang = false;
      if (mul(mul(a, b), mul(c, a)) != mul(mul(a, mul(b, c)), a)) moufang = false;
      if (norm_sq(mul(a, b)) != norm_sq(a) * norm_sq(b)) normmul = false;
      const Oct abc = associator(a, b, c);
      if (associator(b, a, c) != -abc || associator(a, c, b) != -abc) alt = false;
    }
    rep.add_exact("alternativity_artin", artin);
    rep.add_exact("moufang_identities", moufang);
    rep.add_exact("norm_multiplicativity", normmul);
    rep.add_exact("associator_alternating", alt);
  } else {
    double err = 0;
    bool ok = true;
    for (int s = 0; s < n; ++s) {
      auto a = random_octonion<double>(rng);
      auto b = random_octonion<double>(rng);
      auto c = random_octonion<double>(rng);
      const double scale = (1 + norm(a)) * (1 + norm(a)) * (1 + norm(b)) * (1 + norm(c));
      ok &= close(mul(a, mul(b, mul(a, c))), mul(mul(mul(a, b), a), c), 1e-12, scale, &err);
      ok &= close(mul(mul(mul(a, b), c), b), mul(a, mul(b, mul(c, b))), 1e-12, scale, &err);
      ok &= close(mul(mul(a, b), mul(c, a)), mul(mul(a, mul(b, c)), a), 1e-12, scale, &err);
      ok &= close(associator(a, a, b), Octonion<double>::zero(), 1e-12, scale, &err);
    }
    rep.add("moufang_alternativity_float", ok, err);
  }

  {
    bool ok = true;
    for (int p = 0; p <= 6; ++p) {
      auto omegas = sample_sphere<Rational>(SliceSignature(p), 4, opt.seed + p);
      for (const auto& w : omegas) {
        auto ll = compose(left_mul(w), left_mul(w));
        auto id = LeftMulOperator<Rational>::identity();
        if (!(ll.matrix() == (-id.matrix()).eval())) ok = false;
      }
    }
    rep.add_exact("left_mul_eta_squared_is_minus_id", ok);
  }

  {
    using Oct = Octonion<Rational>;
    auto e = [](int i) { return Oct::basis(i); };
    bool ok = mul(e(1), e(2)) == e(3) && mul(e(1), e(6)) == -e(7) &&
              associator(e(1), e(2), e(4)) == Rational(2) * e(7) &&
              compose(left_mul(e(1)), left_mul(e(2))).apply(e(4)) == -e(7) &&
              left_mul(mul(e(1), e(2))).apply(e(4)) == e(7);
    rep.add_exact("table_and_nonassociativity_witnesses", ok);
  }
  return rep;
}

SuiteReport run_slicegeom_suite(const VerifyOptions& opt) {
  SuiteReport rep{"slicegeom", opt.mode, opt.seed, {}};
  Rng rng(opt.seed);
  const SliceSignature sig(opt.p);
  const int n = opt.samples;

  if (opt.mode == "exact") {
    bool roundtrip = true;
    for (int s = 0; s < n; ++s) {
      auto pt = random_split_point<Rational>(sig, rng);
      auto x = embed(pt);
      auto back = split(x, sig);
      if (embed(back) != x) roundtrip = false;
    }
    rep.add_exact("embed_split_roundtrip", roundtrip);

    bool sphere_ok = true;
    for (int p = 0; p <= 6; ++p) {
      auto ws = sample_sphere<Rational>(SliceSignature(p), 32, opt.seed + 100 + p);
      for (const auto& w : ws) {
        if (mul(w, w) != -Octonion<Rational>::one()) sphere_ok = false;
        if (norm_sq(w) != Rational(1)) sphere_ok = false;
        if (!on_sphere(w, SliceSignature(p))) sphere_ok = false;
      }
    }
    rep.add_exact("sphere_samples_square_to_minus_one", sphere_ok);

    bool awb = true;
    auto ws = sample_sphere<Rational>(sig, 16, opt.seed + 7);
    for (int s = 0; s < std::min(n, 200); ++s) {
      Octonion<Rational> a;
      for (int i = 0; i <= sig.p; ++i) a.coeff_ref(i) = rng.next_rational();
      auto w = ws[s % ws.size()];
      auto b = random_octonion<Rational>(rng);
      if (mul(a, mul(w, b)) != mul(w, mul(conj(a), b))) awb = false;
      if (mul(a, w) != mul(w, conj(a))) awb = false;
    }
    {
      using Oct = Octonion<Rational>;
      auto lhs = mul(Oct::basis(1), mul(Oct::basis(7), Oct::basis(2)));
      auto rhs = mul(Oct::basis(7), mul(conj(Oct::basis(1)), Oct::basis(2)));
      if (!(lhs == rhs && lhs == -Oct::basis(4))) awb = false;
    }
    rep.add_exact("lemma_a_omega_b", awb);
  } else {
    double err = 0;
    bool ok = true;
    for (int s = 0; s < n; ++s) {
      auto pt = random_split_point<double>(sig, rng);
      auto x = embed(pt);
      auto back = split(x, sig);
      ok &= close(embed(back), x, 1e-12, 1.0, &err);
      ok &= std::abs(norm_sq(pt.omega) - 1.0) <= 1e-12;
    }
    rep.add("embed_split_roundtrip_float", ok, err);
  }

  {
    bool ok = true;
    SlicePoint<Rational> sp;
    sp.xp = VectorX<Rational>(sig.p + 1);
    for (int i = 0; i <= sig.p; ++i) sp.xp[i] = rng.next_rational();
    sp.r = Rational(3);
    auto refl = reflect(sp);
    ok &= refl.r == Rational(-3);
    ok &= reflect(refl).r == sp.r;
    SlicePoint<Rational> zero_r{sp.xp, Rational(0)};
    ok &= reflect(zero_r).r == Rational(0);
    rep.add_exact("reflect_involution", ok);
  }

  {
    // orbit membership on the p = 2 example family
    SliceSignature s2(2);
    using Oct = Octonion<Rational>;
    Oct x = Oct::one() + Rational(3) * Oct::basis(3);
    auto sp = split(x, s2);
    Oct inside = Oct::one() + Rational(3) * Oct::basis(5);
    Oct wrong_r = Oct::one() + Rational(4) * Oct::basis(5);
    Oct wrong_xp = Oct(Rational(2)) + Rational(3) * Oct::basis(3);
    bool ok = orbit_contains(sp.xp, sp.r, inside, s2) &&
              !orbit_contains(sp.xp, sp.r, wrong_r, s2) &&
              !orbit_contains(sp.xp, sp.r, wrong_xp, s2);
    rep.add_exact("orbit_contains", ok);
  }

  {
    auto a = sample_sphere<Rational>(sig, 8, opt.seed);
    auto b = sample_sphere<Rational>(sig, 8, opt.seed);
    bool ok = true;
    for (int i = 0; i < 8; ++i)
      if (!(a[i] == b[i])) ok = false;
    rep.add_exact("sampler_determinism", ok);
  }
  return rep;
}

SuiteReport run_stem_suite(const VerifyOptions& opt) {
  SuiteReport rep{"stem", "exact", opt.seed, {}};  // the battery itself is exact arithmetic
  Rng rng(opt.seed);
  const SliceSignature sig(opt.p);
  using S = Rational;

  std::vector<StemFunction<S>> stems;
  for (int i = 0; i < 6; ++i)
    stems.push_back(ck_extension(random_xp_poly<S>(sig, rng, std::min(5, opt.max_degree + 2), 3)));

  {
    // value at r = 0 must not see omega (parity)
    bool ok = true;
    auto ws = sample_sphere<S>(sig, 32, opt.seed + 1);
    for (const auto& f : stems) {
      SplitPoint<S> pt;
      pt.sig = sig;
      pt.xp = VectorX<S>(sig.p + 1);
      for (int i = 0; i <= sig.p; ++i) pt.xp[i] = rng.next_rational();
      pt.r = S(0);
      Octonion<S> ref;
      bool first = true;
      for (const auto& w : ws) {
        pt.omega = w;
        auto v = f.eval_split(pt);
        if (first) {
          ref = v;
          first = false;
        } else if (v != ref) {
          ok = false;
        }
      }
    }
    rep.add_exact("r0_value_omega_independent", ok);
  }

  {
    // GSR => GSM: CK stems solve the system, and the exact D_omega vanishes
    bool ok = true;
    auto ws = sample_sphere<S>(sig, 8, opt.seed + 2);
    for (const auto& f : stems) {
      auto res = cr_residual(f);
      if (!res.first.is_zero() || !res.second.is_zero()) ok = false;
      for (int s = 0; s < opt.points; ++s) {
        SlicePoint<S> xp;
        xp.xp = VectorX<S>(sig.p + 1);
        for (int i = 0; i <= sig.p; ++i) xp.xp[i] = rng.next_rational();
        xp.r = rng.next_rational();
        for (const auto& w : ws)
          if (d_omega_exact(f, xp, w) != Octonion<S>::zero()) ok = false;
      }
    }
    rep.add_exact("gsr_implies_gsm", ok);
  }

  {
    // strictness witness f(x) = omega: slice-constant (numeric D_omega = 0)
    // but its would-be stem pair has an even F2 = 1
    const SliceSignature fs(opt.p);
    FunctionHandle f{
        fs,
        [fs](const Octonion<double>& x) { return split(x, fs).omega; },
        [fs](const Octonion<double>& x) {
          double nq = 0;
          for (int i = fs.p + 1; i < 8; ++i) nq += x[i] * x[i];
          return nq > 1e-12;
        },
        "omega"};
    double err = 0;
    bool ok = true;
    Rng frng(opt.seed + 3);
    for (int s = 0; s < 10; ++s) {
      auto pt = random_split_point<double>(fs, frng);
      pt.r += 0.5;  // keep stencils off R^{p+1}
      ok &= close(d_omega_numeric(f, pt).value, Octonion<double>::zero(), 1e-8, 1.0, &err);
    }
    bool rejected = false;
    try {
      OctPolynomial<S> f1(fs), f2(fs);
      f2.add_term(Exponents(fs.p + 2, 0), Octonion<S>::one());  // even F2
      StemFunction<S> bad(f1, f2);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    rep.add("strict_witness_numeric_domega_zero", ok, err);
    rep.add_exact("strict_witness_parity_rejected", rejected);
  }

  {
    // representation formula and two-point form reproduce stem values
    bool ok = true;
    auto etas = sample_sphere<S>(sig, 4, opt.seed + 4);
    auto omegas = sample_sphere<S>(sig, 4, opt.seed + 5);
    for (const auto& f : stems) {
      for (int s = 0; s < opt.points; ++s) {
        VectorX<S> xp(sig.p + 1);
        for (int i = 0; i <= sig.p; ++i) xp[i] = rng.next_rational();
        S r = rng.next_rational(3, 3);
        if (r.sign() < 0) r = -r;
        VectorX<S> coords(sig.p + 2);
        for (int i = 0; i <= sig.p; ++i) coords[i] = xp[i];
        coords[sig.p + 1] = r;
        for (const auto& eta : etas) {
          const auto fplus = f.eval_slice(coords, eta);
          VectorX<S> reflected = coords;
          reflected[sig.p + 1] = -r;
          const auto fminus = f.eval_slice(reflected, eta);
          for (size_t wi = 0; wi < omegas.size(); ++wi) {
            const auto& w = omegas[wi];
            const auto direct = f.eval_slice(coords, w);
            if (representation_formula(fplus, fminus, eta, w) != direct) ok = false;
            // two-point form through a genuinely different slice pair
            const auto& w2 = omegas[(wi + 1) % omegas.size()];
            if (!(eta == w2) &&
                rep_formula_two_point(fplus, f.eval_slice(coords, w2), eta, w2, w) != direct)
              ok = false;
          }
          // extracted stem values must not depend on eta
          auto [f1a, f2a] = stem_from_slices(fplus, fminus, eta);
          const auto& eta2 = etas[0];
          auto [f1b, f2b] = stem_from_slices(f.eval_slice(coords, eta2),
                                             f.eval_slice(reflected, eta2), eta2);
          if (!(f1a == f1b && f2a == f2b)) ok = false;
        }
      }
    }
    rep.add_exact("representation_formulas_roundtrip", ok);
  }

  {
    bool ok = true;
    for (const auto& f : stems) {
      auto j = stem_to_json(f);
      auto back = stem_from_json<S>(j);
      if (!(back.f1().terms() == f.f1().terms() && back.f2().terms() == f.f2().terms())) ok = false;
    }
    rep.add_exact("stem_json_roundtrip", ok);
  }
  return rep;
}

SuiteReport run_fueter_suite(const VerifyOptions& opt) {
  SuiteReport rep{"fueter", "exact", opt.seed, {}};
  using S = Rational;
  const SliceSignature sig(opt.p);
  Rng rng(opt.seed);

  std::vector<SplitPoint<S>> grid;
  for (int i = 0; i < opt.points; ++i) grid.push_back(random_split_point<S>(sig, rng));
  auto omegas = sample_sphere<S>(sig, 8, opt.seed + 1);

  std::vector<MultiIndex> indices;
  for (int d = 0; d <= opt.max_degree; ++d)
    for (auto& k : multi_indices_of_degree(sig.p + 1, d)) indices.push_back(k);

  {
    bool ok = true;
    for (const auto& k : indices) {
      auto vk = v_poly<S>(k, sig);
      const int n = std::max(1, multi_abs(k));
      const AssocTree tree = AssocTree::r_fold(n);
      for (auto pt : grid)
        for (const auto& w : omegas) {
          pt.omega = w;
          if (fueter_poly_eval(k, pt, tree) != vk.eval_split(pt)) ok = false;
        }
    }
    rep.add_exact("v_equals_p", ok);
  }

  {
    bool ok = true;
    Octonion<S> a_rand = random_octonion<S>(rng);
    const std::vector<Octonion<S>> appended = {Octonion<S>::basis(2), Octonion<S>::basis(7), a_rand};
    for (const auto& k : indices) {
      const int n = multi_abs(k);
      if (n < 2) continue;
      auto trees = AssocTree::enumerate(n);
      auto trees_app = AssocTree::enumerate(n + 1);
      for (const auto& pt : grid) {
        const auto ref = fueter_poly_eval(k, pt, trees.front());
        for (const auto& t : trees)
          if (fueter_poly_eval(k, pt, t) != ref) ok = false;
        for (const auto& a : appended) {
          const auto ref_a = fueter_poly_eval_appended(k, pt, a, trees_app.front());
          for (const auto& t : trees_app)
            if (fueter_poly_eval_appended(k, pt, a, t) != ref_a) ok = false;
        }
      }
    }
    rep.add_exact("association_order_independence", ok);
  }

  {
    bool ok = true;
    for (const auto& k : indices) {
      const int n = std::max(1, multi_abs(k));
      const AssocTree tree = AssocTree::l_fold(n);
      for (const auto& pt : grid)
        if (fueter_poly_eval(k, pt, tree, FueterSide::left, PermutationStrategy::distinct) !=
            fueter_poly_eval(k, pt, tree, FueterSide::left, PermutationStrategy::all))
          ok = false;
    }
    rep.add_exact("permutation_strategies_agree", ok);
  }

  {
    bool ok = true;
    for (const auto& k : indices) {
      if (multi_abs(k) == 0) continue;
      auto vk = v_poly<S>(k, sig);
      std::vector<StemFunction<S>> vk_minus;
      for (int i = 0; i <= sig.p; ++i)
        vk_minus.push_back(v_poly_or_zero<S>(minus_unit(k, i), sig));
      const S deg = scalar_traits<S>::from_int(multi_abs(k));
      for (auto pt : grid)
        for (const auto& w : omegas) {
          pt.omega = w;
          Octonion<S> left, right;
          for (int i = 0; i <= sig.p; ++i) {
            const Octonion<S> zi = fueter_var(i, pt);
            const Octonion<S> vi = vk_minus[i].eval_split(pt);
            left += mul(zi, vi);
            right += mul(vi, zi);
          }
          const Octonion<S> target = vk.eval_split(pt) * deg;
          if (left != target || right != target) ok = false;
        }
    }
    rep.add_exact("recurrence_both_sides", ok);
  }

  {
    bool ok = true;
    for (const auto& k : indices) {
      auto res = cr_residual(v_poly<S>(k, sig));
      if (!res.first.is_zero() || !res.second.is_zero()) ok = false;
    }
    rep.add_exact("v_poly_solves_gcr", ok);
  }

  {
    // Euler homogeneity on the stem components, symbolically
    bool ok = true;
    for (const auto& k : indices) {
      auto vk = v_poly<S>(k, sig);
      const S deg = scalar_traits<S>::from_int(multi_abs(k));
      auto euler = [&](const OctPolynomial<S>& f) {
        OctPolynomial<S> acc(sig);
        for (int v = 0; v <= sig.p + 1; ++v)
          acc = acc + OctPolynomial<S>::variable(sig, v) * f.derivative(v);
        return acc;
      };
      if (!(euler(vk.f1()) - deg * vk.f1()).is_zero()) ok = false;
      if (!(euler(vk.f2()) - deg * vk.f2()).is_zero()) ok = false;
    }
    rep.add_exact("euler_homogeneity", ok);
  }

  {
    // p = 0 collapse onto x^k / k!
    bool ok = true;
    const SliceSignature s0(0);
    Rng r0(opt.seed + 9);
    for (int k = 0; k <= opt.max_degree + 1; ++k) {
      for (int i = 0; i < 10; ++i) {
        auto pt = random_split_point<S>(s0, r0);
        const Octonion<S> x = embed(pt);
        const S scale = S(1) / multi_factorial<S>(MultiIndex{k});
        const auto direct = pow(x, k) * scale;
        if (fueter_poly_eval(MultiIndex{k}, pt, AssocTree::r_fold(std::max(1, k))) != direct)
          ok = false;
        if (fueter_poly_eval(MultiIndex{k}, pt, AssocTree::r_fold(std::max(1, k)),
                             FueterSide::right) != direct)
          ok = false;
      }
    }
    rep.add_exact("p0_collapse_to_powers", ok);
  }
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"algebra",  "slicegeom", "stem",  "fueter",
                                                 "calculus", "cauchy",    "taylor"};
  return names;
}

std::vector<SuiteReport> run_suites(const std::string& suite, const VerifyOptions& opt) {
  std::vector<SuiteReport> out;
  auto run_one = [&](const std::string& name) {
    if (name == "algebra") return run_algebra_suite(opt);
    if (name == "slicegeom") return run_slicegeom_suite(opt);
    if (name == "stem") return run_stem_suite(opt);
    if (name == "fueter") return run_fueter_suite(opt);
    if (name == "calculus") return run_calculus_suite(opt);
    if (name == "cauchy") return run_cauchy_suite(opt);
    if (name == "taylor") return run_taylor_suite(opt);
    throw std::invalid_argument("unknown suite '" + name + "'");
  };
  if (suite == "all") {
    for (const auto& name : suite_names()) out.push_back(run_one(name));
  } else {
    out.push_back(run_one(suite));
  }
  return out;
}

}  // namespace oslice
