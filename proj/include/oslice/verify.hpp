#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oslice/report.hpp"

namespace oslice {

struct VerifyOptions {
  std::string mode = "exact";  // "exact" | "float"
  std::uint64_t seed = 42;
  int samples = 2000;  // sample count for the algebra-style batteries
  int p = 1;           // slice parameter where one applies
  int max_degree = 3;  // Fueter degree cap
  int level = 20;      // quadrature level
  int points = 20;     // evaluation grid size
};

SuiteReport run_algebra_suite(const VerifyOptions& opt);
SuiteReport run_slicegeom_suite(const VerifyOptions& opt);
SuiteReport run_stem_suite(const VerifyOptions& opt);
SuiteReport run_fueter_suite(const VerifyOptions& opt);
SuiteReport run_calculus_suite(const VerifyOptions& opt);
SuiteReport run_cauchy_suite(const VerifyOptions& opt);
SuiteReport run_taylor_suite(const VerifyOptions& opt);

const std::vector<std::string>& suite_names();

/// Runs one named suite ("algebra", ..., "taylor") or, for "all", every
/// suite in declaration order. Throws std::invalid_argument on an unknown
/// name.
std::vector<SuiteReport> run_suites(const std::string& suite, const VerifyOptions& opt);

}  // namespace oslice
