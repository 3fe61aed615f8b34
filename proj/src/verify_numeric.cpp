#include <cmath>

#include "oslice/cauchy.hpp"
#include "oslice/registry.hpp"
#include "oslice/taylor.hpp"
#include "oslice/verify.hpp"

namespace oslice {

namespace {

double max_err(const Octonion<double>& a, const Octonion<double>& b) {
  double err = 0;
  for (int i = 0; i < 8; ++i) err = std::max(err, std::abs(a[i] - b[i]));
  return err;
}

double rel_err(const Octonion<double>& value, const Octonion<double>& reference) {
  return max_err(value, reference) / std::max(1.0, norm(reference));
}

SplitPoint<double> interior_point(SliceSignature sig, const Octonion<double>& omega, Rng& rng,
                                  double rmax) {
  SplitPoint<double> pt;
  pt.sig = sig;
  pt.xp.resize(sig.p + 1);
  double nsq = 0;
  Eigen::VectorXd raw(sig.p + 2);
  for (int i = 0; i < sig.p + 2; ++i) {
    raw[i] = 2.0 * rng.next_double() - 1.0;
    nsq += raw[i] * raw[i];
  }
  raw *= rmax / std::max(1.0, std::sqrt(nsq));
  for (int i = 0; i <= sig.p; ++i) pt.xp[i] = raw[i];
  pt.r = std::abs(raw[sig.p + 1]);
  pt.omega = raw[sig.p + 1] >= 0 ? omega : -omega;
  return pt;
}

StemFunction<Rational> ck_of_monomial(SliceSignature sig, const MultiIndex& k) {
  return ck_extension(OctPolynomial<Rational>::xp_monomial(sig, k));
}

}  // namespace

SuiteReport run_calculus_suite(const VerifyOptions& opt) {
  SuiteReport rep{"calculus", "float", opt.seed, {}};
  Rng rng(opt.seed);
  const FDScheme scheme;  // order 4, h = 1e-4

  {
    // exact stem operator against the finite-difference operator
    const SliceSignature sig(opt.p);
    double err = 0;
    Rng srng(opt.seed + 1);
    auto omegas = sample_sphere<double>(sig, 4, opt.seed + 2);
    for (int trial = 0; trial < 4; ++trial) {
      OctPolynomial<Rational> f0(sig);
      for (int t = 0; t < 3; ++t) {
        Exponents e(sig.p + 2, 0);
        int budget = static_cast<int>(srng.next_int(0, 4));
        for (int i = 0; i <= sig.p && budget > 0; ++i) {
          e[i] = static_cast<int>(srng.next_int(0, budget));
          budget -= e[i];
        }
        f0.add_term(e, random_octonion<Rational>(srng));
      }
      // a generic (non-monogenic) stem: even/odd split of f0 * r-powers
      OctPolynomial<Rational> f1 = f0;
      Exponents er(sig.p + 2, 0);
      er[sig.p + 1] = 1;
      OctPolynomial<Rational> rpoly(sig);
      rpoly.add_term(er, Octonion<Rational>::one());
      StemFunction<Rational> stem(f1, rpoly * f0);
      StemFunction<double> stem_d = to_double(stem);
      FunctionHandle h = stem_handle(stem_d);
      for (int s = 0; s < std::min(opt.points, 50); ++s) {
        auto pt = interior_point(sig, omegas[s % omegas.size()], srng, 0.8);
        SlicePoint<double> xp{pt.xp, pt.r};
        const auto exact = d_omega_exact(stem_d, xp, pt.omega);
        const auto numeric = d_omega_numeric(h, pt, scheme).value;
        err = std::max(err, max_err(exact, numeric));
      }
    }
    rep.add("exact_vs_numeric_domega", err <= 1e-6, err);
  }

  {
    // Fueter variables: left operator annihilates z_l; right operator gives
    // 2 e_l for l >= 1 and zero for the central l = 0
    const SliceSignature sig(std::max(1, opt.p));
    double err0 = 0, err1 = 0;
    auto omegas = sample_sphere<double>(sig, 3, opt.seed + 3);
    for (const auto& w : omegas) {
      auto pt = interior_point(sig, w, rng, 0.7);
      for (int ell = 0; ell <= sig.p; ++ell) {
        MultiIndex k(sig.p + 1, 0);
        k[ell] = 1;
        auto z = ck_of_monomial(sig, k);
        FunctionHandle h = stem_handle(z);
        err0 = std::max(err0, max_err(d_omega_numeric(h, pt, scheme).value,
                                      Octonion<double>::zero()));
        const auto right = d_omega_right_numeric(h, pt, scheme).value;
        const auto expected =
            ell == 0 ? Octonion<double>::zero() : 2.0 * Octonion<double>::basis(ell);
        err1 = std::max(err1, max_err(right, expected));
        // mirrored check via the right Fueter variable under the left operator
        FunctionHandle hr{sig,
                          [sig, ell](const Octonion<double>& x) {
                            return fueter_var(ell, split(x, sig), FueterSide::right);
                          },
                          nullptr,
                          "zR"};
        err1 = std::max(err1, max_err(d_omega_numeric(hr, pt, scheme).value, expected));
      }
    }
    rep.add("fueter_variables_left_monogenic", err0 <= 1e-8, err0);
    rep.add("fueter_variables_right_derivative", err1 <= 1e-8, err1);
  }

  {
    // z1 * e2 fails to be monogenic: D_omega(z1 e2) = 2 e3 at omega = e7
    const SliceSignature sig(1);
    FunctionHandle f{sig,
                     [sig](const Octonion<double>& x) {
                       return mul(fueter_var(1, split(x, sig)), Octonion<double>::basis(2));
                     },
                     nullptr,
                     "z1e2"};
    SplitPoint<double> pt;
    pt.sig = sig;
    pt.xp.resize(2);
    pt.xp << 0.3, -0.2;
    pt.r = 0.6;
    pt.omega = Octonion<double>::basis(7);
    const double err =
        max_err(d_omega_numeric(f, pt, scheme).value, 2.0 * Octonion<double>::basis(3));
    rep.add("za_witness_not_right_module", err <= 1e-8, err);
  }

  {
    // p = 6 specialization: D_omega equals the full Cauchy-Riemann stencil
    const SliceSignature sig(6);
    MultiIndex k(7, 0);
    k[2] = 1;
    k[0] = 1;
    auto stem = ck_of_monomial(sig, k);
    FunctionHandle h = stem_handle(stem);
    double err = 0;
    Rng prng(opt.seed + 4);
    for (int s = 0; s < 6; ++s) {
      auto pt = random_split_point<double>(sig, prng);
      pt.r += 0.3;
      const Octonion<double> x = embed(pt);
      Octonion<double> full;
      for (int i = 0; i < 8; ++i) {
        auto g = [&](double t) {
          Octonion<double> y = x;
          y.coeff_ref(i) += t;
          return h.eval(y);
        };
        full += mul(Octonion<double>::basis(i), detail::central_diff(g, scheme.h, scheme.order));
      }
      err = std::max(err, max_err(d_omega_numeric(h, pt, scheme).value, full));
    }
    rep.add("p6_matches_full_cr_operator", err <= 1e-8, err);
  }

  {
    // p = 0 specialization: D_omega = d_x0 + I d_r on the plane C_I
    const SliceSignature sig(0);
    MultiIndex k{2};
    auto stem = ck_of_monomial(sig, k);  // x^2 on each slice plane
    FunctionHandle h = stem_handle(stem);
    double err = 0;
    auto omegas = sample_sphere<double>(sig, 4, opt.seed + 5);
    Rng prng(opt.seed + 6);
    for (const auto& w : omegas) {
      auto pt = interior_point(sig, w, prng, 0.8);
      auto g0 = [&](double t) { return h.eval(detail::slice_displaced(pt, 0, t)); };
      auto gr = [&](double t) { return h.eval(detail::slice_displaced(pt, 1, t)); };
      const Octonion<double> cr = detail::central_diff(g0, scheme.h, scheme.order) +
                                  mul(pt.omega, detail::central_diff(gr, scheme.h, scheme.order));
      err = std::max(err, max_err(d_omega_numeric(h, pt, scheme).value, cr));
      err = std::max(err, max_err(cr, Octonion<double>::zero()));  // x^2 is slice regular
    }
    rep.add("p0_matches_complex_cr", err <= 1e-8, err);
  }

  {
    // locally constant indicator of H_w u H_-w is monogenic off R^{p+1}
    const SliceSignature sig(std::min(5, opt.p));
    Target ind = make_target("indicator", sig);
    double err = 0;
    auto omegas = sample_sphere<double>(sig, 3, opt.seed + 7);
    Rng prng(opt.seed + 8);
    for (const auto& w : omegas) {
      auto pt = interior_point(sig, w, prng, 0.6);
      pt.r += 0.5;
      err = std::max(err,
                     max_err(d_omega_numeric(ind.handle, pt, scheme).value,
                             Octonion<double>::zero()));
    }
    auto pt_on = interior_point(sig, canonical_omega<double>(sig), prng, 0.4);
    pt_on.r += 0.5;
    err = std::max(err, max_err(d_omega_numeric(ind.handle, pt_on, scheme).value,
                                Octonion<double>::zero()));
    rep.add("indicator_slicewise_constant", err <= 1e-8, err);
  }

  {
    // global operator theta-bar
    const SliceSignature sig(opt.p);
    Target z0 = make_target("z0", sig);
    Target cube = make_target("xq_power:3", sig);
    double err = 0;
    Rng prng(opt.seed + 9);
    for (int s = 0; s < 6; ++s) {
      auto pt = random_split_point<double>(sig, prng);
      pt.r += 0.4;
      const Octonion<double> x = embed(pt);
      err = std::max(err, max_err(global_theta(z0.handle, x, scheme), Octonion<double>::zero()));
    }
    double err_cube = 0;
    for (int s = 0; s < 6; ++s) {
      auto pt = random_split_point<double>(sig, prng);
      pt.r += 0.4;
      err_cube = std::max(
          err_cube, max_err(global_theta(cube.handle, embed(pt), scheme), Octonion<double>::zero()));
    }
    rep.add("global_theta_xq_power_cubic", err_cube <= 1e-7, err_cube);
    // x -> x_q is not monogenic: theta-bar = -1
    const int p = sig.p;
    FunctionHandle xq{sig,
                      [p](const Octonion<double>& x) {
                        Octonion<double> q;
                        for (int i = p + 1; i < 8; ++i) q.coeff_ref(i) = x[i];
                        return q;
                      },
                      nullptr,
                      "xq"};
    auto pt = random_split_point<double>(sig, prng);
    pt.r += 0.5;
    const double err_xq =
        max_err(global_theta(xq, embed(pt), scheme), -Octonion<double>::one());
    rep.add("global_theta_gsm_examples", err <= 1e-8, err);
    rep.add("global_theta_detects_xq", err_xq <= 1e-7, err_xq);
    bool singular = false;
    try {
      SplitPoint<double> real_pt = pt;
      real_pt.r = 0;
      global_theta(xq, embed(real_pt), scheme);
    } catch (const std::domain_error&) {
      singular = true;
    }
    rep.add_exact("global_theta_singular_locus", singular);
  }

  {
    // slice Laplacian: monogenic squares are harmonic, |x'|^2 is not
    const SliceSignature sig(opt.p);
    MultiIndex k(sig.p + 1, 0);
    k[0] = 2;
    FunctionHandle sq = stem_handle(ck_of_monomial(sig, k));
    OctPolynomial<Rational> nsq_poly = slice_norm_sq_poly(sig);
    StemFunction<Rational> nsq_stem(nsq_poly, OctPolynomial<Rational>(sig));
    FunctionHandle nsq = stem_handle(nsq_stem);
    double err = 0, err_c = 0;
    Rng prng(opt.seed + 10);
    auto w = sample_sphere<double>(sig, 1, opt.seed + 11)[0];
    for (int s = 0; s < 5; ++s) {
      auto pt = interior_point(sig, w, prng, 0.8);
      err = std::max(err, max_err(slice_laplacian_numeric(sq, pt, scheme),
                                  Octonion<double>::zero()));
      err_c = std::max(err_c, max_err(slice_laplacian_numeric(nsq, pt, scheme),
                                      Octonion<double>(2.0 * (sig.p + 2))));
      FunctionHandle c = stem_handle(constant_stem(sig, Octonion<Rational>(Rational(3))));
      err = std::max(err, max_err(slice_laplacian_numeric(c, pt, scheme),
                                  Octonion<double>::zero()));
    }
    rep.add("slice_laplacian_monogenic_harmonic", err <= 1e-6, err);
    rep.add("slice_laplacian_norm_sq_defect", err_c <= 1e-6, err_c);
  }

  {
    // stencil order, measured against the exact operator on a
    // non-monogenic quintic stem (monogenic combinations cancel the
    // order-4 truncation term identically)
    const SliceSignature sig(std::max(1, opt.p));
    OctPolynomial<Rational> x0 = OctPolynomial<Rational>::variable(sig, 0);
    const auto quintic_d =
        to_double(StemFunction<Rational>(x0 * x0 * x0 * x0 * x0, OctPolynomial<Rational>(sig)));
    const auto cubic_d =
        to_double(StemFunction<Rational>(x0 * x0 * x0, OctPolynomial<Rational>(sig)));
    FunctionHandle quintic = stem_handle(quintic_d);
    FunctionHandle cubic = stem_handle(cubic_d);
    auto w = sample_sphere<double>(sig, 1, opt.seed + 12)[0];
    Rng prng(opt.seed + 13);
    auto pt = interior_point(sig, w, prng, 0.6);
    pt.r += 0.2;
    SlicePoint<double> xp{pt.xp, pt.r};
    const auto exact5 = d_omega_exact(quintic_d, xp, pt.omega);

    const FDScheme coarse{0.05, 4, false}, fine{0.025, 4, false};
    const double e_coarse = max_err(d_omega_numeric(quintic, pt, coarse).value, exact5);
    const double e_fine = max_err(d_omega_numeric(quintic, pt, fine).value, exact5);
    const bool order4 = e_coarse / std::max(e_fine, 1e-300) >= 16.0 * 0.8;
    const double e_cubic = max_err(d_omega_numeric(cubic, pt, coarse).value,
                                   d_omega_exact(cubic_d, xp, pt.omega));
    rep.add("fd_order4_decay_on_quintic", order4, e_fine,
            "coarse=" + format_double(e_coarse));
    rep.add("fd_order4_exact_on_cubic", e_cubic <= 1e-10, e_cubic);
  }

  {
    // translation and coordinate derivatives preserve monogenicity
    const SliceSignature sig(opt.p);
    MultiIndex k(sig.p + 1, 0);
    k[0] = 2;
    auto stem = ck_of_monomial(sig, k);
    FunctionHandle h = stem_handle(stem);
    VectorX<double> shift(sig.p + 1);
    for (int i = 0; i <= sig.p; ++i) shift[i] = 0.1 * (i + 1);
    FunctionHandle moved = translate(h, shift);
    MultiIndex dk(sig.p + 1, 0);
    dk[0] = 1;
    FunctionHandle deriv = partial_k(h, dk, scheme);
    double err = 0, err_deriv = 0;
    auto w = sample_sphere<double>(sig, 1, opt.seed + 14)[0];
    Rng prng(opt.seed + 15);
    for (int s = 0; s < 4; ++s) {
      auto pt = interior_point(sig, w, prng, 0.5);
      err = std::max(err, max_err(d_omega_numeric(moved, pt, scheme).value,
                                  Octonion<double>::zero()));
      // derivative handle stacks two stencils, so its noise floor is higher
      err_deriv = std::max(err_deriv,
                           max_err(d_omega_numeric(deriv, pt, FDScheme{1e-3, 4, false}).value,
                                   Octonion<double>::zero()));
      // translate(z0, y)(x) = z0(x - y)
      Target z0 = make_target("z0", sig);
      FunctionHandle z0moved = translate(z0.handle, shift);
      const Octonion<double> x = embed(pt);
      Octonion<double> yoct;
      for (int i = 0; i <= sig.p; ++i) yoct.coeff_ref(i) = shift[i];
      err = std::max(err, max_err(z0moved.eval(x), z0.handle.eval(x - yoct)));
    }
    rep.add("partialk_handle_preserves_gsm", err_deriv <= 1e-5, err_deriv);
    // exact derivative of a stem: d_{eps_0}(z0^2) = (2 x0, 2 r)
    MultiIndex k2(sig.p + 1, 0);
    k2[0] = 2;
    auto z0sq = ck_of_monomial(sig, k2);
    auto dstem = partial_k(z0sq, dk);
    OctPolynomial<Rational> want_f1 =
        Rational(2) * OctPolynomial<Rational>::variable(sig, 0);
    OctPolynomial<Rational> want_f2 =
        Rational(2) * OctPolynomial<Rational>::variable(sig, sig.p + 1);
    const bool exact_ok =
        (dstem.f1() - want_f1).is_zero() && (dstem.f2() - want_f2).is_zero();
    rep.add("translate_partialk_preserve_gsm", err <= 1e-6, err);
    rep.add_exact("partialk_exact_on_stems", exact_ok);
  }
  return rep;
}

SuiteReport run_cauchy_suite(const VerifyOptions& opt) {
  SuiteReport rep{"cauchy", "float", opt.seed, {}};
  Rng rng(opt.seed);
  const int level = opt.level;

  {
    double err = std::abs(sigma(0) - 2 * M_PI);
    err = std::max(err, std::abs(sigma(2) - 2 * M_PI * M_PI));
    err = std::max(err, std::abs(sigma(6) - std::pow(M_PI, 4) / 3.0));
    rep.add("sigma_surface_areas", err <= 1e-12, err);
  }

  {
    double err = max_err(kernel_E(Octonion<double>::one(), 0),
                         Octonion<double>(1.0 / (2 * M_PI)));
    const Octonion<double> x = random_octonion<double>(rng) + Octonion<double>(2.0);
    for (int p : {0, 1, 3}) {
      const double lam = 1.7;
      err = std::max(err, max_err(kernel_E(x * lam, p),
                                  kernel_E(x, p) * std::pow(lam, -(p + 1))));
    }
    err = std::max(err, max_err(kernel_E(Octonion<double>::basis(1), 6),
                                Octonion<double>::basis(1) * (-3.0 / std::pow(M_PI, 4))));
    bool threw = false;
    try {
      kernel_E(Octonion<double>::zero(), 1);
    } catch (const std::domain_error&) {
      threw = true;
    }
    rep.add("kernel_examples", err <= 1e-12 && threw, err);
  }

  {
    // quadrature sanity: total area and the yi*yj symmetry integrals;
    // weights are summed pairwise so the check measures the rule, not the
    // accumulation order
    double err_area = 0, err_sym = 0;
    for (int n = 2; n <= 8; ++n) {
      const int lev = n <= 4 ? 16 : (n <= 6 ? 8 : 5);
      SphereRule rule(n, lev);
      Eigen::VectorXd u;
      double w;
      std::vector<double> weights(rule.size());
      std::vector<double> moments(n * n, 0.0);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        rule.node(i, u, w);
        weights[i] = w;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) moments[a * n + b] += w * u[a] * u[b];
      }
      const double area = pairwise_sum(weights);
      err_area = std::max(err_area, std::abs(area - sphere_area(n)) / sphere_area(n));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double want = a == b ? sphere_area(n) / n : 0.0;
          err_sym = std::max(err_sym, std::abs(moments[a * n + b] - want));
        }
    }
    rep.add("sphere_rule_total_area", err_area <= 1e-12, err_area);
    rep.add("sphere_rule_second_moments", err_sym <= 1e-10, err_sym);
  }

  {
    // Cauchy formula I on the V_k battery
    double err = 0;
    for (int p : {0, 1}) {
      const SliceSignature sig(p);
      auto eta = sample_sphere<double>(sig, 1, opt.seed + p)[0];
      BallSlice ball(sig, eta, 1.0);
      SphereRule rule(p + 2, level);
      for (const auto& k : multi_indices_of_degree(p + 1, 2)) {
        auto stem = to_double(v_poly<Rational>(k, sig));
        SliceFn f = on_slice(stem, eta);
        for (int s = 0; s < 4; ++s) {
          auto x = interior_point(sig, eta, rng, 0.5);
          const auto got = cauchy_reconstruct(f, ball, x, rule);
          err = std::max(err, rel_err(got, stem.eval_split(x)));
        }
      }
      // constants reproduce
      SliceFn cf = [](const Eigen::VectorXd&) { return Octonion<double>(2.5); };
      auto x0 = interior_point(sig, eta, rng, 0.4);
      err = std::max(err, rel_err(cauchy_reconstruct(cf, ball, x0, rule),
                                  Octonion<double>(2.5)));
      // kernel centered outside the ball is monogenic near the closed ball
      Target kshift = make_target("kernel:2.5", sig);
      SliceFn kf = on_slice(kshift.handle, eta);
      err = std::max(err, rel_err(cauchy_reconstruct(kf, ball, x0, rule),
                                  kshift.handle.eval(embed(x0))));
    }
    rep.add("cauchy_formula_reconstruction", err <= 1e-7, err);
  }

  {
    // Cauchy-Pompeiu I on non-monogenic inputs
    const SliceSignature sig(1);
    auto eta = sample_sphere<double>(sig, 1, opt.seed + 21)[0];
    BallSlice ball(sig, eta, 1.0);
    SphereRule rule(3, level);
    BallRule vrule(3, level);
    double err = 0;

    OctPolynomial<Rational> f1(sig), f2(sig);
    Exponents e2(sig.p + 2, 0);
    e2[sig.p + 1] = 2;
    f1.add_term(e2, Octonion<Rational>::one());
    StemFunction<Rational> r2(f1, f2);  // (r^2, 0)
    auto r2d = to_double(r2);
    Exponents e1(sig.p + 2, 0);
    e1[sig.p + 1] = 1;
    OctPolynomial<Rational> g1(sig), g2(sig);
    g2.add_term(e1, Octonion<Rational>::one());
    StemFunction<Rational> xq(g1, g2);  // (0, r) i.e. x -> x_q
    auto xqd = to_double(xq);

    for (const auto& stem : {r2d, xqd}) {
      SliceFn f = on_slice(stem, eta);
      SliceFn df = d_omega_on_slice(stem, eta);
      for (int s = 0; s < 3; ++s) {
        auto x = interior_point(sig, eta, rng, 0.5);
        const auto got = cauchy_pompeiu(f, df, ball, x, rule, vrule);
        err = std::max(err, rel_err(got, stem.eval_split(x)));
      }
    }
    rep.add("cauchy_pompeiu_non_monogenic", err <= 1e-5, err);
  }

  {
    // inverse direction: boundary integrals produce monogenic functions
    const SliceSignature sig(1);
    auto eta = sample_sphere<double>(sig, 1, opt.seed + 31)[0];
    BallSlice ball(sig, eta, 1.0);
    SphereRule rule(3, level);
    // an arbitrary polynomial trace, not monogenic
    SliceFn g = [](const Eigen::VectorXd& y) {
      Octonion<double> v(y[0] * y[0] - 0.3 * y[2]);
      v.coeff_ref(3) = y[1] * y[2];
      v.coeff_ref(6) = 0.2 + y[0];
      return v;
    };
    FunctionHandle fh{
        sig,
        [&, eta](const Octonion<double>& x) {
          return inverse_boundary_operator(g, ball, split(x, sig), rule);
        },
        nullptr,
        "cauchy_transform"};
    double err = 0;
    for (int s = 0; s < 6; ++s) {
      auto x = interior_point(sig, eta, rng, 0.45);
      err = std::max(err, max_err(d_omega_numeric(fh, x, FDScheme{1e-3, 2, false}).value,
                                  Octonion<double>::zero()));
    }
    // constant trace reproduces the constant
    SliceFn cg = [](const Eigen::VectorXd&) { return Octonion<double>(1.25); };
    auto x0 = interior_point(sig, eta, rng, 0.4);
    const double cerr =
        rel_err(inverse_boundary_operator(cg, ball, x0, rule), Octonion<double>(1.25));
    rep.add("inverse_boundary_monogenic", err <= 1e-6, err);
    rep.add("inverse_boundary_constant", cerr <= 1e-10, cerr);
  }

  {
    // mean value property
    double err = 0, defect_err = 0;
    for (int p : {0, 1, 2}) {
      const SliceSignature sig(p);
      auto eta = sample_sphere<double>(sig, 1, opt.seed + 41 + p)[0];
      Eigen::VectorXd center(p + 2);
      for (int i = 0; i < p + 2; ++i) center[i] = 0.3 * ((i % 2) ? -1 : 1) * (i + 1) / (p + 2.0);
      const double radius = 0.5;
      BallSlice ball(sig, eta, center, radius);
      SphereRule rule(p + 2, level);
      MultiIndex k(p + 1, 0);
      k[p] = 1;
      if (p >= 1) k[0] = 1;
      auto stem = to_double(v_poly<Rational>(k, sig));
      err = std::max(err, rel_err(mean_value(on_slice(stem, eta), ball, rule),
                                  stem.eval_slice(center, eta)));
      SliceFn cf = [](const Eigen::VectorXd&) { return Octonion<double>(-1.5); };
      err = std::max(err, rel_err(mean_value(cf, ball, rule), Octonion<double>(-1.5)));
      // |x'|^2 has the classical harmonic defect R^2
      SliceFn nsq = [](const Eigen::VectorXd& y) { return Octonion<double>(y.squaredNorm()); };
      const double want = center.squaredNorm() + radius * radius;
      defect_err = std::max(defect_err,
                            rel_err(mean_value(nsq, ball, rule), Octonion<double>(want)));
    }
    rep.add("mean_value_monogenic", err <= 1e-8, err);
    rep.add("mean_value_norm_sq_defect", defect_err <= 1e-8, defect_err);
  }

  {
    // operator kernel: omega = eta reduction and the r = 0 degeneration
    const SliceSignature sig(1);
    auto eta = sample_sphere<double>(sig, 1, opt.seed + 51)[0];
    auto omega2 = sample_sphere<double>(sig, 2, opt.seed + 52)[1];
    BallSlice ball(sig, eta, 1.0);
    double err = 0;
    for (int s = 0; s < 5; ++s) {
      Eigen::VectorXd y(3);
      y << 1.1 + rng.next_double(), rng.next_double(), 0.8 + rng.next_double();
      auto x = interior_point(sig, eta, rng, 0.5);
      auto ker = operator_kernel(y, ball, x);
      const Octonion<double> e_direct =
          kernel_E(embed_slice(y, eta, 1) - embed(x), 1);
      auto a = random_octonion<double>(rng);
      err = std::max(err, max_err(ker.apply(a), mul(e_direct, a)));
      // r = 0: the reflected projection coincides, second term vanishes
      SplitPoint<double> x0 = x;
      x0.r = 0;
      x0.omega = omega2;
      auto ker0 = operator_kernel(y, ball, x0);
      const Octonion<double> e0 = kernel_E(embed_slice(y, eta, 1) - embed(x0), 1);
      err = std::max(err, max_err(ker0.apply(a), mul(e0, a)));
      // generic omega: matches the two-slice expansion term by term
      SplitPoint<double> xg = x;
      xg.omega = omega2;
      auto kerg = operator_kernel(y, ball, xg);
      auto parts = detail::global_kernel_parts(y, eta, 1, xg.xp, xg.r);
      const Octonion<double> manual =
          0.5 * (mul(parts.e_plus + parts.e_minus, a) +
                 mul(xg.omega, mul(eta, mul(parts.e_minus - parts.e_plus, a))));
      err = std::max(err, max_err(kerg.apply(a), manual));
    }
    rep.add("operator_kernel_reductions", err <= 1e-12, err);
  }

  {
    // Cauchy formula II: off-slice reconstruction, eta independence
    const SliceSignature sig(1);
    auto eta1 = Octonion<double>::basis(2);
    auto eta2 = Octonion<double>::basis(4);
    Octonion<double> omega;
    omega.coeff_ref(3) = std::sqrt(0.5);
    omega.coeff_ref(4) = std::sqrt(0.5);
    MultiIndex k{2, 1};
    auto stem = to_double(v_poly<Rational>(k, sig));
    SphereRule rule(3, level);
    double err = 0, eta_gap = 0, reduction_gap = 0;
    for (int s = 0; s < 4; ++s) {
      SplitPoint<double> x;
      x.sig = sig;
      x.xp.resize(2);
      x.xp << 0.25 * rng.next_double(), 0.25 * rng.next_double();
      x.r = 0.15 + 0.3 * rng.next_double();
      x.omega = omega;
      const auto ref = stem.eval_split(x);
      BallSlice b1(sig, eta1, 1.0), b2(sig, eta2, 1.0);
      const auto v1 = cauchy_reconstruct_global(on_slice(stem, eta1), b1, x, rule);
      const auto v2 = cauchy_reconstruct_global(on_slice(stem, eta2), b2, x, rule);
      err = std::max(err, rel_err(v1, ref));
      eta_gap = std::max(eta_gap, max_err(v1, v2));
      // omega = eta reduction agrees with Cauchy I
      SplitPoint<double> xs = x;
      xs.omega = eta1;
      const auto global_on = cauchy_reconstruct_global(on_slice(stem, eta1), b1, xs, rule);
      const auto slice_on = cauchy_reconstruct(on_slice(stem, eta1), b1, xs, rule);
      reduction_gap = std::max(reduction_gap, max_err(global_on, slice_on));
    }
    rep.add("cauchy_global_off_slice", err <= 1e-6, err);
    rep.add("cauchy_global_eta_independent", eta_gap <= 2e-7, eta_gap);
    rep.add("cauchy_global_on_slice_reduction", reduction_gap <= 1e-12, reduction_gap);
  }

  {
    // Lemma: D_omega(E a) = 0 for 20 constants a at 10 points over 5 omegas
    const SliceSignature sig(1);
    double err = 0;
    auto omegas = sample_sphere<double>(sig, 5, opt.seed + 61);
    Target kernel = make_target("kernel", sig);
    for (int ai = 0; ai < 20; ++ai) {
      const Octonion<double> a = random_octonion<double>(rng);
      FunctionHandle h{sig,
                       [a, &kernel](const Octonion<double>& x) {
                         return mul(kernel.handle.eval(x), a);
                       },
                       kernel.handle.domain,
                       "Ea"};
      for (int s = 0; s < 10; ++s) {
        auto pt = interior_point(sig, omegas[s % omegas.size()], rng, 0.5);
        pt.xp[0] += 1.5;  // keep clear of the pole at 0
        err = std::max(err, max_err(d_omega_numeric(h, pt, FDScheme{1e-4, 4, false}).value,
                                    Octonion<double>::zero()));
      }
    }
    rep.add("kernel_monogenic_with_constants", err <= 1e-7, err);

    // E is two-sided monogenic
    double err2 = 0;
    for (int s = 0; s < 6; ++s) {
      auto pt = interior_point(sig, omegas[s % omegas.size()], rng, 0.5);
      pt.xp[0] += 1.5;
      err2 = std::max(err2, max_err(d_omega_numeric(kernel.handle, pt).value,
                                    Octonion<double>::zero()));
      err2 = std::max(err2, max_err(d_omega_right_numeric(kernel.handle, pt).value,
                                    Octonion<double>::zero()));
    }
    rep.add("kernel_two_sided_monogenic", err2 <= 1e-7, err2);
  }

  {
    // associator cancellation with exact kernel gradients:
    // sum_i [e_i, D_omega E_i, a] = 0
    const SliceSignature sig(1);
    double err = 0;
    auto omegas = sample_sphere<double>(sig, 3, opt.seed + 71);
    const KernelDerivative e_form = kernel_slice_form(sig);
    std::vector<KernelDerivative> grads;
    for (int v = 0; v <= sig.p + 1; ++v) grads.push_back(kernel_partial(e_form, v));
    for (const auto& w : omegas)
      for (int s = 0; s < 4; ++s) {
        Eigen::VectorXd xp(3);
        xp << 1.0 + rng.next_double(), rng.next_double(), 0.5 + rng.next_double();
        const Octonion<double> a = random_octonion<double>(rng);
        // E_i on the slice through w: components of Phi + w Psi
        Octonion<double> total;
        for (int i = 0; i < 8; ++i) {
          // D_w E_i = sum_j e_j d_j E_i + w d_r E_i, scalar E_i components
          Octonion<double> d_ei;
          for (int v = 0; v <= sig.p + 1; ++v) {
            const Octonion<double> grad = grads[v].eval(xp, w);
            const double comp_i = grad[i];
            const Octonion<double> dir =
                v <= sig.p ? Octonion<double>::basis(v) : w;
            d_ei += dir * comp_i;
          }
          total += associator(Octonion<double>::basis(i), d_ei, a);
        }
        err = std::max(err, max_err(total, Octonion<double>::zero()));
      }
    rep.add("associator_cancellation_lemma", err <= 1e-10, err);
  }

  {
    // reconstruction error decreases as the level doubles
    const SliceSignature sig(1);
    auto eta = sample_sphere<double>(sig, 1, opt.seed + 81)[0];
    BallSlice ball(sig, eta, 1.0);
    MultiIndex k{1, 1};
    auto stem = to_double(v_poly<Rational>(k, sig));
    SliceFn f = on_slice(stem, eta);
    auto x = interior_point(sig, eta, rng, 0.5);
    const auto ref = stem.eval_split(x);
    double prev = -1;
    bool monotone = true;
    std::string detail;
    for (int lev : {3, 6, 12, 24}) {
      const double e = rel_err(cauchy_reconstruct(f, ball, x, SphereRule(3, lev)), ref);
      if (prev >= 0 && e > 1.1 * prev && e > 1e-12) monotone = false;
      detail += format_double(e) + " ";
      prev = e;
    }
    rep.add("quadrature_convergence", monotone, prev, detail);
  }
  return rep;
}

SuiteReport run_taylor_suite(const VerifyOptions& opt) {
  SuiteReport rep{"taylor", "float", opt.seed, {}};
  Rng rng(opt.seed);
  const int level = opt.level;

  {
    // Q_0 = E, and the p = 0 closed form Q_k = k!/(2 pi) x^{-(k+1)}
    double err = 0;
    for (int p : {0, 1, 2}) {
      const SliceSignature sig(p);
      auto eta = sample_sphere<double>(sig, 1, opt.seed + p)[0];
      const KernelDerivative q0 = q_kernel(MultiIndex(p + 1, 0), sig);
      for (int s = 0; s < 5; ++s) {
        Eigen::VectorXd xp(p + 2);
        for (int i = 0; i < p + 2; ++i) xp[i] = 0.4 + rng.next_double();
        err = std::max(err, max_err(q0.eval(xp, eta),
                                    kernel_E(embed_slice(xp, eta, p), p)));
      }
    }
    const SliceSignature s0(0);
    auto eta0 = sample_sphere<double>(s0, 1, opt.seed + 5)[0];
    for (int k = 0; k <= 4; ++k) {
      const KernelDerivative qk = q_kernel(MultiIndex{k}, s0);
      for (int s = 0; s < 4; ++s) {
        Eigen::VectorXd xp(2);
        xp << 0.5 + rng.next_double(), 0.3 + rng.next_double();
        const Octonion<double> x = embed_slice(xp, eta0, 0);
        double fact = 1;
        for (int j = 2; j <= k; ++j) fact *= j;
        const Octonion<double> want = pow(inverse(x), k + 1) * (fact / (2 * M_PI));
        err = std::max(err, max_err(qk.eval(xp, eta0), want));
      }
    }
    rep.add("q_kernel_base_and_p0_closed_form", err <= 1e-10, err);
  }

  {
    // Q_k against nested central differences of E, |k| <= 2, p in {0,1,2}
    double err = 0;
    const double h = 1e-4;
    for (int p : {0, 1, 2}) {
      const SliceSignature sig(p);
      auto eta = sample_sphere<double>(sig, 1, opt.seed + 11 + p)[0];
      for (int d = 1; d <= 2; ++d)
        for (const auto& k : multi_indices_of_degree(p + 1, d)) {
          const KernelDerivative qk = q_kernel(k, sig);
          for (int s = 0; s < 3; ++s) {
            Eigen::VectorXd xp(p + 2);
            for (int i = 0; i < p + 2; ++i) xp[i] = 0.6 + rng.next_double();
            // finite-difference d_k E with the same sign convention
            Octonion<double> fd;
            std::vector<int> vars;
            for (size_t i = 0; i < k.size(); ++i)
              for (int c = 0; c < k[i]; ++c) vars.push_back(static_cast<int>(i));
            auto eval_e = [&](const Eigen::VectorXd& y) {
              return kernel_E(embed_slice(y, eta, p), p);
            };
            if (vars.size() == 1) {
              Eigen::VectorXd ya = xp, yb = xp;
              ya[vars[0]] += h;
              yb[vars[0]] -= h;
              fd = (eval_e(ya) - eval_e(yb)) * (0.5 / h);
            } else {
              Eigen::VectorXd pp = xp, pm = xp, mp = xp, mm = xp;
              pp[vars[0]] += h;
              pp[vars[1]] += h;
              pm[vars[0]] += h;
              pm[vars[1]] -= h;
              mp[vars[0]] -= h;
              mp[vars[1]] += h;
              mm[vars[0]] -= h;
              mm[vars[1]] -= h;
              fd = (eval_e(pp) - eval_e(pm) - eval_e(mp) + eval_e(mm)) * (0.25 / (h * h));
            }
            const Octonion<double> want = (d % 2 ? -1.0 : 1.0) * fd;  // (-1)^{|k|}
            err = std::max(err, max_err(qk.eval(xp, eta), want));
          }
        }
    }
    rep.add("q_kernel_matches_fd_oracle", err <= 1e-6, err);
  }

  {
    // symbolic slice-form conditions used by the integral lemmas
    bool ok = true;
    for (int p : {0, 1, 2, 3}) {
      const SliceSignature sig(p);
      const KernelDerivative e_form = kernel_slice_form(sig);
      const OctPolynomial<Rational> nsq = slice_norm_sq_poly(sig);
      const Rational m(e_form.denom_exp);
      // d_r Phi_i = d_i Psi after clearing the shared denominator:
      // compare numerators of the lifted derivatives
      for (int i = 1; i <= sig.p; ++i) {
        OctPolynomial<Rational> phi_i(sig);
        for (const auto& [e, c] : e_form.numA.terms())
          phi_i.add_term(e, Octonion<Rational>(c[i]));
        OctPolynomial<Rational> psi(sig);
        for (const auto& [e, c] : e_form.numB.terms()) psi.add_term(e, Octonion<Rational>(c[0]));
        const int rv = sig.p + 1;
        auto lift_dr = phi_i.derivative(rv) * nsq -
                       m * (OctPolynomial<Rational>::variable(sig, rv) * phi_i);
        auto lift_di =
            psi.derivative(i) * nsq - m * (OctPolynomial<Rational>::variable(sig, i) * psi);
        if (!(lift_dr - lift_di).is_zero()) ok = false;
      }
    }
    rep.add_exact("kernel_slice_form_compatibility", ok);
  }

  {
    // kernel series partial sums
    double err_match = 0, err_lr = 0;
    bool decay = true, zero_term = true;
    // p = 0: geometric decay at |x|/|y| = 1/2 against the closed form
    {
      const SliceSignature sig(0);
      auto eta = sample_sphere<double>(sig, 1, opt.seed + 21)[0];
      Eigen::VectorXd yp(2), xp(2);
      yp << 0.9, 0.7;
      const double ratio = 0.5;
      xp = ratio * yp;
      const Octonion<double> target =
          kernel_E(embed_slice(yp, eta, 0) - embed_slice(xp, eta, 0), 0);
      double prev = -1;
      for (int K = 0; K <= 10; K += 2) {
        auto part = kernel_series_partial(xp, yp, eta, sig, K);
        const double e = max_err(part.left, target);
        if (prev >= 0 && e > prev * 1.05 && e > 1e-13) decay = false;
        prev = e;
        err_lr = std::max(err_lr, max_err(part.left, part.right));
      }
      err_match = std::max(err_match, prev);
      // x = 0 keeps only the k = 0 term
      Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);
      auto part0 = kernel_series_partial(x0, yp, eta, sig, 3);
      zero_term = max_err(part0.left, kernel_E(embed_slice(yp, eta, 0), 0)) <= 1e-14;
    }
    // p = 1: left and right forms agree and approach E
    {
      const SliceSignature sig(1);
      auto eta = sample_sphere<double>(sig, 1, opt.seed + 22)[0];
      Eigen::VectorXd yp(3), xp(3);
      yp << 0.8, 0.5, 0.6;
      xp = 0.5 * yp;
      const Octonion<double> target =
          kernel_E(embed_slice(yp, eta, 1) - embed_slice(xp, eta, 1), 1);
      double prev = -1;
      for (int K = 0; K <= 8; K += 2) {
        auto part = kernel_series_partial(xp, yp, eta, sig, K);
        err_lr = std::max(err_lr, max_err(part.left, part.right));
        const double e = max_err(part.left, target);
        if (prev >= 0 && e > prev * 1.05 && e > 1e-13) decay = false;
        prev = e;
      }
      // K = 8 truncation at ratio 1/2 leaves roughly 2^-9 of the kernel
      err_match = std::max(err_match, prev);
    }
    rep.add("kernel_series_converges", decay && zero_term && err_match <= 1e-2, err_match);
    rep.add("kernel_series_left_right_agree", err_lr <= 1e-9, err_lr);
  }

  {
    // boundary-integral Taylor coefficients on stems
    double err = 0;
    const SliceSignature sig(1);
    auto eta = sample_sphere<double>(sig, 1, opt.seed + 31)[0];
    BallSlice ball(sig, eta, 1.0);
    SphereRule rule(3, level);
    MultiIndex k0{2, 1};
    auto vk = v_poly<Rational>(k0, sig);
    SliceFn f = on_slice(to_double(vk), eta);
    // coeff(k0) of V_{k0} is exactly 1
    err = std::max(err, max_err(taylor_coeff(f, k0, ball, rule), Octonion<double>::one()));
    // matches the exact stem derivative at 0 for every |k| <= 3
    for (int d = 0; d <= 3; ++d)
      for (const auto& k : multi_indices_of_degree(2, d)) {
        auto dstem = partial_k(vk, k);
        VectorX<Rational> origin(3);
        origin.setConstant(Rational(0));
        const auto want = to_double(dstem.f1().eval(origin));
        err = std::max(err, max_err(taylor_coeff(f, k, ball, rule), want));
      }
    rep.add("taylor_coefficients", err <= 1e-8, err);
    // degree overshoot gives zero
    const double overshoot = max_err(taylor_coeff(f, MultiIndex{4, 0}, ball, rule),
                                     Octonion<double>::zero());
    rep.add("taylor_coefficient_overshoot_zero", overshoot <= 1e-9, overshoot);
    // constant reproduces at k = 0
    SliceFn cf = [](const Eigen::VectorXd&) { return Octonion<double>(0.75); };
    const double cerr = max_err(taylor_coeff(cf, MultiIndex{0, 0}, ball, rule),
                                Octonion<double>(0.75));
    rep.add("taylor_coefficient_constant", cerr <= 1e-10, cerr);
  }

  {
    // tails: vanish identically at p = 0 and for slice-plane-valued data;
    // at p = 1 they account exactly for the Taylor defect
    const int lev = level;
    double p0_err = 0;
    {
      const SliceSignature sig(0);
      auto eta = sample_sphere<double>(sig, 1, opt.seed + 41)[0];
      BallSlice ball(sig, eta, 1.0);
      SphereRule rule(2, lev);
      MultiIndex k{3};
      SliceFn f = on_slice(to_double(v_poly<Rational>(k, sig)), eta);
      auto x = interior_point(sig, eta, rng, 0.5);
      for (int d = 0; d <= 3; ++d)
        p0_err = std::max(p0_err, norm(tail_term(f, d, x, ball, rule).value));
    }
    rep.add("tails_vanish_p0", p0_err <= 1e-9, p0_err);

    double account_err = 0, nonzero_tail = 0;
    {
      // octonion-coefficient stem: the slots leave the quaternion
      // subalgebra of the slice and the tails are genuinely nonzero
      const SliceSignature sig(1);
      auto eta = sample_sphere<double>(sig, 1, opt.seed + 42)[0];
      BallSlice ball(sig, eta, 1.0);
      SphereRule rule(3, lev);
      OctPolynomial<Rational> f0(sig);
      f0.add_term(Exponents{0, 3, 0}, Octonion<Rational>::basis(4));
      auto stem = to_double(ck_extension(f0));
      SliceFn f = on_slice(stem, eta);
      auto x = interior_point(sig, eta, rng, 0.45);
      const int K = 3;
      auto result = taylor_reconstruct(f, x, K, ball, rule);
      const auto ref = stem.eval_split(x);
      account_err = rel_err(result.reconstruction, ref);
      Octonion<double> tails_sum, plain;
      for (const auto& t : result.tails) {
        tails_sum += t.value;
        nonzero_tail = std::max(nonzero_tail, norm(t.value));
      }
      plain = result.reconstruction - tails_sum;
      // f - plain sum = sum of tails
      account_err = std::max(account_err, max_err(ref - plain, tails_sum) / 2.0);
    }
    rep.add("tail_accounting_p1", account_err <= 1e-6 && nonzero_tail > 1e-4, account_err,
            "max_tail=" + format_double(nonzero_tail));
  }

  {
    // full reconstruction battery
    double err = 0;
    {
      const SliceSignature sig(1);
      auto eta = sample_sphere<double>(sig, 1, opt.seed + 51)[0];
      BallSlice ball(sig, eta, 1.0);
      SphereRule rule(3, level);
      MultiIndex k{2, 1};
      auto stem = to_double(v_poly<Rational>(k, sig));
      SliceFn f = on_slice(stem, eta);
      for (int s = 0; s < 3; ++s) {
        auto x = interior_point(sig, eta, rng, 0.45);
        auto result = taylor_reconstruct(f, x, 3, ball, rule);
        err = std::max(err, rel_err(result.reconstruction, stem.eval_split(x)));
      }
      SliceFn cf = [](const Eigen::VectorXd&) { return Octonion<double>(3.25); };
      auto x = interior_point(sig, eta, rng, 0.3);
      auto cres = taylor_reconstruct(cf, x, 0, ball, rule);
      err = std::max(err, rel_err(cres.reconstruction, Octonion<double>(3.25)));
    }
    rep.add("taylor_reconstruction_p1", err <= 1e-6, err);
    {
      const SliceSignature sig(0);
      auto eta = sample_sphere<double>(sig, 1, opt.seed + 52)[0];
      BallSlice ball(sig, eta, 1.0);
      SphereRule rule(2, level);
      MultiIndex k{3};
      auto stem = ck_of_monomial(sig, k);  // x^3
      auto stem_d = to_double(stem);
      SliceFn f = on_slice(stem_d, eta);
      auto x = interior_point(sig, eta, rng, 0.5);
      auto result = taylor_reconstruct(f, x, 3, ball, rule);
      const double e0 = rel_err(result.reconstruction, stem_d.eval_split(x));
      double tail0 = 0;
      for (const auto& t : result.tails) tail0 = std::max(tail0, norm(t.value));
      rep.add("taylor_reconstruction_p0_cubic", e0 <= 1e-8 && tail0 <= 1e-9, std::max(e0, tail0));
    }
  }
  return rep;
}

}  // namespace oslice
