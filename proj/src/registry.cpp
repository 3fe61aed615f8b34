#include "oslice/registry.hpp"

#include <sstream>

#include "oslice/cauchy.hpp"

namespace oslice {

namespace {

Target stem_target(std::string name, SliceSignature sig, StemFunction<Rational> stem) {
  Target t;
  t.name = std::move(name);
  t.sig = sig;
  t.handle = stem_handle(stem, t.name);
  t.stem = std::move(stem);
  return t;
}

Octonion<double> xq_part(const Octonion<double>& x, int p) {
  Octonion<double> q;
  for (int i = p + 1; i < 8; ++i) q.coeff_ref(i) = x[i];
  return q;
}

}  // namespace

Target make_target(const std::string& spec, SliceSignature sig) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (head == "z" || (head.size() == 2 && head[0] == 'z' && std::isdigit(head[1]))) {
    const int ell = head.size() == 2 ? head[1] - '0' : 0;
    if (ell > sig.p) throw std::invalid_argument("target: Fueter index exceeds p");
    MultiIndex k(sig.p + 1, 0);
    k[ell] = 1;
    return stem_target(head, sig, ck_extension(OctPolynomial<Rational>::xp_monomial(sig, k)));
  }

  if (head == "stem") {
    if (!arg.empty() && arg[0] == '{') {
      try {
        return stem_target(spec, sig, stem_from_json<Rational>(nlohmann::json::parse(arg)));
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("target: bad stem JSON: ") + e.what());
      }
    }
    if (!arg.empty() && arg[0] == 'V') {
      MultiIndex k;
      for (size_t i = 1; i < arg.size(); ++i) {
        if (!std::isdigit(arg[i])) throw std::invalid_argument("target: bad V multi-index digit");
        k.push_back(arg[i] - '0');
      }
      if (static_cast<int>(k.size()) != sig.p + 1)
        throw std::invalid_argument("target: V multi-index needs p+1 digits");
      return stem_target(spec, sig, v_poly<Rational>(k, sig));
    }
    throw std::invalid_argument("target: stem argument must be V<digits> or a JSON object");
  }

  if (head == "poly") {
    if (arg.rfind("x^", 0) != 0) throw std::invalid_argument("target: poly syntax is poly:x^n");
    const int n = std::stoi(arg.substr(2));
    if (n < 0) throw std::invalid_argument("target: poly degree must be nonnegative");
    MultiIndex k(sig.p + 1, 0);
    k[0] = n;
    return stem_target(spec, sig, ck_extension(OctPolynomial<Rational>::xp_monomial(sig, k)));
  }

  if (head == "xq_power") {
    const int n = std::stoi(arg);
    if (n < 0) throw std::invalid_argument("target: xq_power degree must be nonnegative");
    Target t;
    t.name = spec;
    t.sig = sig;
    const int p = sig.p;
    t.handle = FunctionHandle{
        sig,
        [n, p](const Octonion<double>& x) {
          Octonion<double> base = xq_part(x, p);
          base.coeff_ref(0) += x[0];
          return pow(base, n);
        },
        nullptr, spec};
    return t;
  }

  if (head == "kernel") {
    const double shift = arg.empty() ? 0.0 : std::stod(arg);
    Target t;
    t.name = spec;
    t.sig = sig;
    const int p = sig.p;
    Octonion<double> c;
    c.coeff_ref(0) = shift;
    t.handle = FunctionHandle{
        sig, [p, c](const Octonion<double>& x) { return kernel_E(x - c, p); },
        [c](const Octonion<double>& x) { return norm_sq(x - c) > 1e-24; }, spec};
    return t;
  }

  if (head == "indicator") {
    Target t;
    t.name = spec;
    t.sig = sig;
    const int p = sig.p;
    const Octonion<double> w0 = canonical_omega<double>(sig);
    t.handle = FunctionHandle{
        sig,
        [p, w0](const Octonion<double>& x) {
          const Octonion<double> q = xq_part(x, p);
          const double r = norm(q);
          if (r == 0.0) return Octonion<double>::zero();
          const Octonion<double> dir = q * (1.0 / r);
          const double align = std::abs((dir.coeffs().dot(w0.coeffs())));
          return std::abs(align - 1.0) < 1e-9 ? Octonion<double>::one() : Octonion<double>::zero();
        },
        [p](const Octonion<double>& x) { return norm_sq(xq_part(x, p)) > 1e-18; }, spec};
    return t;
  }

  if (head == "const") {
    const Rational c = arg.empty() ? Rational(1) : Rational(arg);
    return stem_target(spec, sig, constant_stem(sig, Octonion<Rational>(c)));
  }

  throw std::invalid_argument("target: unknown function name '" + spec + "'");
}

Octonion<double> parse_direction(const std::string& spec, SliceSignature sig) {
  if (spec.size() >= 2 && spec[0] == 'e' && spec.find(',') == std::string::npos) {
    const int i = std::stoi(spec.substr(1));
    if (i <= sig.p || i > 7)
      throw std::invalid_argument("direction: basis index must be in p+1..7");
    return Octonion<double>::basis(i);
  }
  std::stringstream ss(spec);
  std::string item;
  std::vector<double> vals;
  while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
  if (static_cast<int>(vals.size()) != sig.q())
    throw std::invalid_argument("direction: expected q = 7-p components");
  Octonion<double> w;
  double nsq = 0;
  for (int i = 0; i < sig.q(); ++i) {
    w.coeff_ref(sig.p + 1 + i) = vals[i];
    nsq += vals[i] * vals[i];
  }
  if (nsq == 0) throw std::invalid_argument("direction: zero vector");
  return w * (1.0 / std::sqrt(nsq));
}

}  // namespace oslice
