#pragma once

#include <optional>
#include <string>

#include "oslice/calculus.hpp"

namespace oslice {

/// A named evaluatable function resolved from a CLI/test target string.
/// When the target has an exact stem form it is carried along and used for
/// reference values; the float handle is always present.
struct Target {
  std::string name;
  SliceSignature sig;
  std::optional<StemFunction<Rational>> stem;
  FunctionHandle handle;

  Octonion<double> reference(const Octonion<double>& x) const { return handle.eval(x); }
};

/// Resolves a registry name:
///   "z", "z<l>"       Fueter variable stem z_l (default l = 0)
///   "stem:V<digits>"  V_k for the p+1 digit multi-index
///   "stem:{json}"     stem parsed from its JSON serialization
///   "poly:x^n"        CK[x0^n]  (equals (x0 + x_q)^n)
///   "xq_power:n"      (x0 + x_q)^n evaluated by direct octonion powers
///   "kernel[:shift]"  Cauchy kernel E(x - shift e0)
///   "indicator"       the slab indicator of H_w u H_-w, w = e_{p+1}
///   "const:<c>"       constant rational c
/// Throws std::invalid_argument for unknown names.
Target make_target(const std::string& spec, SliceSignature sig);

/// Basis name "e3" or comma-separated vector; float mode normalizes, exact
/// callers require exact unit vectors. Throws on malformed input or a
/// vector not supported on e_{p+1}..e7.
Octonion<double> parse_direction(const std::string& spec, SliceSignature sig);

}  // namespace oslice
