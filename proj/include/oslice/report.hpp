#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oslice/octonion.hpp"

namespace oslice {

/// Byte-stable JSON writer: fields are emitted in insertion order and every
/// float goes through the same %.17g formatting, so identical inputs give
/// identical bytes.
class JsonWriter {
 public:
  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& k);
  void value_string(const std::string& v);
  void value_double(double v);
  void value_int(long long v);
  void value_bool(bool v);
  void value_raw(const std::string& v);
  const std::string& str() const { return out_; }

 private:
  void comma();
  std::string out_;
  std::vector<bool> first_stack_;
  bool pending_key_ = false;
};

std::string format_double(double v);
std::string escape_json(const std::string& s);

/// JSON array of the eight coefficients.
std::string octonion_to_json(const Octonion<double>& x);

struct CaseResult {
  std::string name;
  bool pass = false;
  std::string max_error;  // "%.17g" float or "exact"
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::string mode;
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;

  bool all_pass() const;
  void add(const std::string& name, bool pass, double max_error, const std::string& detail = "");
  void add_exact(const std::string& name, bool pass, const std::string& detail = "");
};

std::string report_to_json(const SuiteReport& r);
std::string report_to_text(const SuiteReport& r);

}  // namespace oslice
