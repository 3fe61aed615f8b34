#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "oslice/cauchy.hpp"
#include "oslice/registry.hpp"
#include "oslice/report.hpp"
#include "oslice/taylor.hpp"
#include "oslice/verify.hpp"

using namespace oslice;

namespace {

int default_level(int n) {
  if (n <= 4) return 48;
  if (n <= 6) return 32;
  return 20;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open output file '" + out_path + "'");
  os << text;
}

Eigen::VectorXd parse_point(const std::string& spec, int expected) {
  std::stringstream ss(spec);
  std::string item;
  std::vector<double> vals;
  while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
  if (static_cast<int>(vals.size()) != expected)
    throw std::invalid_argument("point must have p+2 slice coordinates");
  Eigen::VectorXd out(expected);
  for (int i = 0; i < expected; ++i) out[i] = vals[i];
  return out;
}

void write_point(JsonWriter& w, const Eigen::VectorXd& pt) {
  w.begin_array();
  for (int i = 0; i < pt.size(); ++i) w.value_double(pt[i]);
  w.end_array();
}

std::string table_csv() {
  const BasisTable& t = basis_table();
  std::string out;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (j) out += ",";
      out += (t.sign[i][j] > 0 ? "+" : "-") + std::to_string(t.index[i][j]);
    }
    out += "\n";
  }
  return out;
}

int run_cauchy(int p, const std::string& eta_spec, const std::string& omega_spec, double radius,
               int level, const std::string& target_spec, const std::string& point_spec,
               const std::string& out_path) {
  const SliceSignature sig(p);
  if (radius <= 0) throw std::invalid_argument("radius must be positive");
  const Octonion<double> eta = parse_direction(eta_spec, sig);
  const Octonion<double> omega = omega_spec.empty() ? eta : parse_direction(omega_spec, sig);
  const Target target = make_target(target_spec, sig);
  const Eigen::VectorXd point = parse_point(point_spec, p + 2);
  if (point.norm() >= radius) throw std::invalid_argument("point lies outside the ball");
  if (level <= 0) level = default_level(p + 2);

  SplitPoint<double> x;
  x.sig = sig;
  x.xp.resize(p + 1);
  for (int i = 0; i <= p; ++i) x.xp[i] = point[i];
  x.r = std::abs(point[p + 1]);
  x.omega = point[p + 1] >= 0 ? omega : -omega;

  BallSlice ball(sig, eta, radius);
  SphereRule rule(p + 2, level);
  SliceFn f = on_slice(target.handle, eta);

  const bool on_integration_slice = detail::max_abs_diff(omega, eta) <= 1e-12 ||
                                    detail::max_abs_diff(omega, -eta) <= 1e-12;
  const Octonion<double> value = on_integration_slice
                                     ? cauchy_reconstruct(f, ball, x, rule)
                                     : cauchy_reconstruct_global(f, ball, x, rule);
  const Octonion<double> reference = target.reference(embed(x));
  const double abs_error = norm(value - reference);
  const double rel_error = abs_error / std::max(1e-300, norm(reference));

  JsonWriter w;
  w.begin_object();
  w.key("p");
  w.value_int(p);
  w.key("eta");
  w.value_raw(octonion_to_json(eta));
  w.key("omega");
  w.value_raw(octonion_to_json(omega));
  w.key("radius");
  w.value_double(radius);
  w.key("level");
  w.value_int(level);
  w.key("target");
  w.value_string(target.name);
  w.key("point");
  write_point(w, point);
  w.key("value");
  w.value_raw(octonion_to_json(value));
  w.key("reference");
  w.value_raw(octonion_to_json(reference));
  w.key("abs_error");
  w.value_double(abs_error);
  w.key("rel_error");
  w.value_double(rel_error);
  w.end_object();
  emit(w.str() + "\n", out_path);
  return 0;
}

int run_taylor(int p, const std::string& eta_spec, int K, double radius, int level,
               const std::string& target_spec, const std::string& point_spec,
               const std::string& out_path) {
  const SliceSignature sig(p);
  if (radius <= 0) throw std::invalid_argument("radius must be positive");
  if (K < 0) throw std::invalid_argument("K must be nonnegative");
  const Octonion<double> eta = parse_direction(eta_spec, sig);
  const Target target = make_target(target_spec, sig);
  Eigen::VectorXd point;
  if (point_spec.empty()) {
    point = Eigen::VectorXd::Constant(p + 2, 0.2);
  } else {
    point = parse_point(point_spec, p + 2);
  }
  if (point.norm() >= radius) throw std::invalid_argument("point lies outside the ball");
  if (level <= 0) level = default_level(p + 2);

  SplitPoint<double> x;
  x.sig = sig;
  x.xp.resize(p + 1);
  for (int i = 0; i <= p; ++i) x.xp[i] = point[i];
  x.r = std::abs(point[p + 1]);
  x.omega = point[p + 1] >= 0 ? eta : -eta;

  BallSlice ball(sig, eta, radius);
  SphereRule rule(p + 2, level);
  auto result = taylor_reconstruct(on_slice(target.handle, eta), x, K, ball, rule);
  const Octonion<double> reference = target.reference(embed(x));
  const double error = norm(result.reconstruction - reference);

  JsonWriter w;
  w.begin_object();
  w.key("p");
  w.value_int(p);
  w.key("K");
  w.value_int(K);
  w.key("target");
  w.value_string(target.name);
  w.key("radius");
  w.value_double(radius);
  w.key("level");
  w.value_int(level);
  w.key("point");
  write_point(w, point);
  w.key("coeffs");
  w.begin_array();
  for (const auto& term : result.coeffs) {
    w.begin_object();
    w.key("k");
    w.begin_array();
    for (int v : term.k) w.value_int(v);
    w.end_array();
    w.key("value");
    w.value_raw(octonion_to_json(term.coeff));
    w.end_object();
  }
  w.end_array();
  w.key("tails");
  w.begin_array();
  for (const auto& tail : result.tails) {
    w.begin_object();
    w.key("degree");
    w.value_int(tail.degree);
    w.key("value");
    w.value_raw(octonion_to_json(tail.value));
    w.end_object();
  }
  w.end_array();
  w.key("reconstruction");
  w.value_raw(octonion_to_json(result.reconstruction));
  w.key("reference");
  w.value_raw(octonion_to_json(reference));
  w.key("error");
  w.value_double(error);
  w.end_object();
  emit(w.str() + "\n", out_path);
  return 0;
}

int run_maxmod(int p, const std::string& eta_spec, const std::string& target_spec, double radius,
               int shells, int samples, std::uint64_t seed, bool json,
               const std::string& out_path) {
  const SliceSignature sig(p);
  if (radius <= 0) throw std::invalid_argument("radius must be positive");
  if (shells < 2) throw std::invalid_argument("need at least two shells");
  const Octonion<double> eta = parse_direction(eta_spec, sig);
  const Target target = make_target(target_spec, sig);
  Rng rng(seed);

  // sample |f| on nested slice spheres; the maximum should drift outward
  std::vector<double> shell_max(shells, 0.0);
  for (int s = 0; s < shells; ++s) {
    const double rho = radius * (s + 1) / shells;
    for (int i = 0; i < samples; ++i) {
      Eigen::VectorXd u(p + 2);
      double nsq = 0;
      for (int d = 0; d < p + 2; ++d) {
        u[d] = rng.next_gaussian();
        nsq += u[d] * u[d];
      }
      u *= rho / std::sqrt(std::max(nsq, 1e-300));
      shell_max[s] = std::max(shell_max[s], norm(target.handle.eval(embed_slice(u, eta, p))));
    }
  }
  bool outward = true;
  for (int s = 0; s + 1 < shells; ++s)
    if (shell_max[s] > shell_max[s + 1] * (1.0 + 1e-12)) outward = false;

  if (json) {
    JsonWriter w;
    w.begin_object();
    w.key("target");
    w.value_string(target.name);
    w.key("p");
    w.value_int(p);
    w.key("radius");
    w.value_double(radius);
    w.key("shell_max");
    w.begin_array();
    for (double m : shell_max) w.value_double(m);
    w.end_array();
    w.key("max_on_boundary");
    w.value_bool(outward);
    w.end_object();
    emit(w.str() + "\n", out_path);
  } else {
    std::string text = "maxmod demo: " + target.name + " (p=" + std::to_string(p) + ")\n";
    for (int s = 0; s < shells; ++s)
      text += "  shell r=" + format_double(radius * (s + 1) / shells) +
              "  max|f|=" + format_double(shell_max[s]) + "\n";
    text += outward ? "maximum attained on the outermost shell\n"
                    : "maximum NOT on the outermost shell\n";
    emit(text, out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"octonionic generalized partial-slice analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string mode = "float", out_path;
  std::uint64_t seed = 42;
  bool json = false;
  app.add_option("--mode", mode, "scalar mode: exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--seed", seed, "deterministic sampling seed");
  app.add_option("--out", out_path, "write output to a file instead of stdout");
  app.add_flag("--json", json, "machine-readable JSON output");

  auto* verify = app.add_subcommand("verify", "run a module invariant battery");
  std::string suite;
  VerifyOptions vopt;
  verify->add_option("--suite", suite, "algebra|slicegeom|stem|fueter|calculus|cauchy|taylor|all")
      ->required();
  verify->add_option("--samples", vopt.samples, "sample count for property batteries");
  verify->add_option("--p", vopt.p, "slice parameter")->check(CLI::Range(0, 6));
  verify->add_option("--max-degree", vopt.max_degree, "Fueter degree cap");
  verify->add_option("--level", vopt.level, "quadrature level");
  verify->add_option("--points", vopt.points, "evaluation grid size");

  auto* cauchy = app.add_subcommand("cauchy", "Cauchy-formula reconstruction experiment");
  int cp = 1, clevel = 0;
  double cradius = 1.0;
  std::string ceta = "e2", comega, ctarget = "stem:V21", cpoint = "0.3,0.1,0.2";
  cauchy->add_option("--p", cp, "slice parameter")->check(CLI::Range(0, 6));
  cauchy->add_option("--eta", ceta, "integration slice direction (e.g. e2)");
  cauchy->add_option("--omega", comega, "evaluation slice direction (default: eta)");
  cauchy->add_option("--radius", cradius, "ball radius");
  cauchy->add_option("--level", clevel, "quadrature level (0 = pinned default)");
  cauchy->add_option("--target", ctarget, "function registry name");
  cauchy->add_option("--point", cpoint, "evaluation point, p+2 slice coordinates");

  auto* taylor = app.add_subcommand("taylor", "Taylor expansion with tail terms");
  int tp = 0, tK = 3, tlevel = 0;
  double tradius = 1.0;
  std::string teta, ttarget = "poly:x^3", tpoint;
  taylor->add_option("--p", tp, "slice parameter")->check(CLI::Range(0, 6));
  taylor->add_option("--K", tK, "truncation degree");
  taylor->add_option("--eta", teta, "slice direction (default e_{p+1})");
  taylor->add_option("--radius", tradius, "ball radius");
  taylor->add_option("--level", tlevel, "quadrature level (0 = pinned default)");
  taylor->add_option("--target", ttarget, "function registry name");
  taylor->add_option("--point", tpoint, "evaluation point, p+2 slice coordinates");

  auto* table = app.add_subcommand("table", "dump the 8x8 basis product table as CSV");

  auto* maxmod = app.add_subcommand("maxmod", "maximum modulus sampling demo");
  int mp = 1, mshells = 5, msamples = 2000;
  double mradius = 1.0;
  std::string meta, mtarget = "stem:V20";
  maxmod->add_option("--p", mp, "slice parameter")->check(CLI::Range(0, 6));
  maxmod->add_option("--eta", meta, "slice direction (default e_{p+1})");
  maxmod->add_option("--target", mtarget, "function registry name");
  maxmod->add_option("--radius", mradius, "outer radius");
  maxmod->add_option("--shells", mshells, "number of nested shells");
  maxmod->add_option("--samples", msamples, "samples per shell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) {
      vopt.mode = mode;
      vopt.seed = seed;
      auto reports = run_suites(suite, vopt);
      std::string text;
      bool all = true;
      for (const auto& r : reports) {
        text += json ? report_to_json(r) : report_to_text(r);
        all &= r.all_pass();
      }
      emit(text, out_path);
      return all ? 0 : 1;
    }
    if (cauchy->parsed()) {
      if (mode == "exact")
        throw std::invalid_argument("cauchy: quadrature runs in float mode only");
      return run_cauchy(cp, ceta, comega, cradius, clevel, ctarget, cpoint, out_path);
    }
    if (taylor->parsed()) {
      if (mode == "exact")
        throw std::invalid_argument("taylor: quadrature runs in float mode only");
      if (teta.empty()) teta = "e" + std::to_string(tp + 1);
      return run_taylor(tp, teta, tK, tradius, tlevel, ttarget, tpoint, out_path);
    }
    if (table->parsed()) {
      emit(table_csv(), out_path);
      return 0;
    }
    if (maxmod->parsed()) {
      if (meta.empty()) meta = "e" + std::to_string(mp + 1);
      return run_maxmod(mp, meta, mtarget, mradius, mshells, msamples, seed, json, out_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
