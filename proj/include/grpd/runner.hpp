#pragma once

// Configuration-driven check runner over the example registry. Every
// check produces one record; the run succeeds when every actual outcome
// matches the example's expected table, so failing fixtures are part of
// the regression surface.

#include <cstdint>
#include <string>
#include <vector>

#include "grpd/zoo.hpp"

namespace grpd {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

// Tolerance classes: algebraic identities, two-route derivative
// comparisons (one differentiation level costs about two digits), and
// subspace projector distances.
struct Tolerances {
  double algebraic = 1e-8;
  double derivative = 1e-6;
  double subspace = 1e-8;
};

struct RunConfig {
  std::vector<std::string> examples;  // empty selects the full registry
  int n_samples = 100;
  std::uint64_t seed = 42;
  Tolerances tol;
  std::string report_path;  // empty: print only
  bool quiet = false;
};

struct CheckRecord {
  std::string example;
  std::string check;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;           // max_residual <= tolerance
  bool expected_pass = true;
  int n_samples = 0;
  std::uint64_t seed = 0;

  bool match() const { return pass == expected_pass; }
};

struct Report {
  std::vector<CheckRecord> records;

  int n_mismatch() const {
    int m = 0;
    for (const auto& r : records)
      if (!r.match()) ++m;
    return m;
  }
  bool all_match() const { return n_mismatch() == 0; }
};

Report run(const RunConfig& cfg);

std::string format_report(const RunConfig& cfg, const Report& rep);

// temp file in the target directory, then rename
void write_report_atomic(const std::string& path, const std::string& text);

std::string list_text();

}  // namespace grpd
