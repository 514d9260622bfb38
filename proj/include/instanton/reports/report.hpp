#pragma once

// Report documents (JSON, schema "v1") and per-sample CSV dumps.
// Nothing time- or host-dependent is recorded, so identical inputs and seeds
// give byte-identical files.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "instanton/errors.hpp"
#include "instanton/geometry/forms.hpp"
#include "json.hpp"

#ifndef INSTANTON_LAB_VERSION
#define INSTANTON_LAB_VERSION "1.0.0"
#endif

namespace instanton {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kToolName = "instanton_lab";
inline constexpr const char* kSchemaVersion = "v1";

/// JSON number, or a string for non-finite values ("inf", "-inf", "nan").
inline ojson json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

/// Shortest round-trip decimal form.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// RFC 4180 quoting when the field holds a comma, quote or newline.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

struct CheckResult {
  std::string suite;
  std::string name;
  std::string comparison;  // "<=", ">=", "==", "in (lo, hi)" or "none"
  double value = 0.0;      // worst observed value
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool pass = false;
  ojson details = ojson::object();
};

/// One CSV row: c0..c3 are chart coordinates, or job-specific columns documented in docs/formats.md.
struct SampleRow {
  std::string suite;
  std::string check;
  std::size_t sample = 0;
  std::array<double, 4> c{};
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

class ReportBuilder {
 public:
  ReportBuilder(std::string job, ojson parameters) : job_(std::move(job)), parameters_(std::move(parameters)) {}

  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void add_check(CheckResult c) { checks_.push_back(std::move(c)); }
  void add_row(SampleRow r) { rows_.push_back(std::move(r)); }
  void set_data(ojson d) { data_ = std::move(d); }

  const std::vector<CheckResult>& checks() const { return checks_; }
  const std::vector<SampleRow>& rows() const { return rows_; }

  bool pass() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return !checks_.empty();
  }

  ojson document() const {
    ojson doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool"] = {{"name", kToolName}, {"version", INSTANTON_LAB_VERSION}};
    doc["job"] = job_;
    doc["parameters"] = parameters_;
    doc["seed"] = seed_;
    ojson checks = ojson::array();
    std::size_t passed = 0;
    for (const auto& c : checks_) {
      ojson j;
      j["suite"] = c.suite;
      j["name"] = c.name;
      j["comparison"] = c.comparison;
      j["value"] = json_number(c.value);
      j["tolerance"] = json_number(c.tolerance);
      j["samples"] = c.samples;
      j["pass"] = c.pass;
      j["details"] = c.details.is_null() ? ojson::object() : c.details;
      checks.push_back(std::move(j));
      passed += c.pass ? 1 : 0;
    }
    doc["checks"] = std::move(checks);
    doc["data"] = data_.is_null() ? ojson::object() : data_;
    doc["summary"] = {{"checks", checks_.size()},
                      {"passed", passed},
                      {"failed", checks_.size() - passed},
                      {"pass", pass()}};
    return doc;
  }

  std::string json_text() const { return document().dump(2) + "\n"; }

  std::string csv_text() const {
    std::string out = "suite,check,sample,c0,c1,c2,c3,value,tolerance,pass\n";
    for (const auto& r : rows_) {
      out += csv_field(r.suite) + "," + csv_field(r.check) + "," + std::to_string(r.sample);
      for (double v : r.c) out += "," + format_double(v);
      out += "," + format_double(r.value) + "," + format_double(r.tolerance) + "," + (r.pass ? "1" : "0") + "\n";
    }
    return out;
  }

 private:
  std::string job_;
  ojson parameters_;
  std::uint64_t seed_ = 0;
  std::vector<CheckResult> checks_;
  std::vector<SampleRow> rows_;
  ojson data_;
};

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

/// Writes <out> (JSON) and, when rows exist, the CSV next to it with extension .csv.
inline std::vector<std::filesystem::path> write_report(const ReportBuilder& report, const std::filesystem::path& out) {
  std::vector<std::filesystem::path> written{out};
  write_text_file(out, report.json_text());
  if (!report.rows().empty()) {
    std::filesystem::path csv = out;
    csv.replace_extension(".csv");
    write_text_file(csv, report.csv_text());
    written.push_back(csv);
  }
  return written;
}

}  // namespace instanton
