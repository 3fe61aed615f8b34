#include "oslice/report.hpp"

#include <cstdio>
#include <sstream>

namespace oslice {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void JsonWriter::comma() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_stack_.empty()) {
    if (!first_stack_.back()) out_ += ",";
    first_stack_.back() = false;
  }
}

void JsonWriter::begin_object() {
  comma();
  out_ += "{";
  first_stack_.push_back(true);
}

void JsonWriter::end_object() {
  out_ += "}";
  first_stack_.pop_back();
}

void JsonWriter::begin_array() {
  comma();
  out_ += "[";
  first_stack_.push_back(true);
}

void JsonWriter::end_array() {
  out_ += "]";
  first_stack_.pop_back();
}

void JsonWriter::key(const std::string& k) {
  comma();
  out_ += "\"" + escape_json(k) + "\":";
  pending_key_ = true;
}

void JsonWriter::value_string(const std::string& v) {
  comma();
  out_ += "\"" + escape_json(v) + "\"";
}

void JsonWriter::value_double(double v) {
  comma();
  out_ += format_double(v);
}

void JsonWriter::value_int(long long v) {
  comma();
  out_ += std::to_string(v);
}

void JsonWriter::value_bool(bool v) {
  comma();
  out_ += v ? "true" : "false";
}

void JsonWriter::value_raw(const std::string& v) {
  comma();
  out_ += v;
}

std::string octonion_to_json(const Octonion<double>& x) {
  std::string out = "[";
  for (int i = 0; i < 8; ++i) {
    if (i) out += ",";
    out += format_double(x[i]);
  }
  return out + "]";
}

bool SuiteReport::all_pass() const {
  for (const auto& c : cases)
    if (!c.pass) return false;
  return true;
}

void SuiteReport::add(const std::string& name, bool pass, double max_error,
                      const std::string& detail) {
  cases.push_back({name, pass, format_double(max_error), detail});
}

void SuiteReport::add_exact(const std::string& name, bool pass, const std::string& detail) {
  cases.push_back({name, pass, "exact", detail});
}

std::string report_to_json(const SuiteReport& r) {
  JsonWriter w;
  w.begin_object();
  w.key("suite");
  w.value_string(r.suite);
  w.key("mode");
  w.value_string(r.mode);
  w.key("seed");
  w.value_int(static_cast<long long>(r.seed));
  w.key("cases");
  w.begin_array();
  for (const auto& c : r.cases) {
    w.begin_object();
    w.key("name");
    w.value_string(c.name);
    w.key("status");
    w.value_string(c.pass ? "pass" : "fail");
    w.key("max_error");
    w.value_string(c.max_error);
    w.key("detail");
    w.value_string(c.detail);
    w.end_object();
  }
  w.end_array();
  w.key("all_pass");
  w.value_bool(r.all_pass());
  w.end_object();
  return w.str() + "\n";
}

std::string report_to_text(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite " << r.suite << " (mode=" << r.mode << ", seed=" << r.seed << ")\n";
  for (const auto& c : r.cases) {
    os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << "  max_error=" << c.max_error;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  os << (r.all_pass() ? "OK" : "FAILED") << " (" << r.cases.size() << " cases)\n";
  return os.str();
}

}  // namespace oslice
