#pragma once

#include <map>
#include <string>
#include <vector>

#include "fns/config.hpp"
#include "fns/trajectory.hpp"

#include "json.hpp"

namespace fns {

struct Verdict {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  std::string comparison;  // "<=", ">=", "in" (threshold2 used for "in")
  double threshold2 = 0.0;
  bool pass = false;
};

struct Curve {
  std::vector<double> x;
  std::vector<double> y;
};

// Structured results of one study. Every verdict is re-derivable from the
// recorded numbers and thresholds; wall-clock data lives in a separate
// timing block so reports compare byte-identically across runs.
struct ExperimentReport {
  ExperimentConfig config;
  std::map<std::string, double> scalars;
  std::map<std::string, Curve> curves;
  std::map<std::string, std::vector<double>> fits;  // slope,intercept,residual
  std::vector<Verdict> verdicts;
  std::vector<DiagnosticsRecord> diagnostics;
  bool pass = true;
  double wall_ms = 0.0;
  long steps = 0;

  void add_verdict(const std::string& name, double measured, double threshold,
                   const std::string& comparison, double threshold2 = 0.0);
};

nlohmann::ordered_json report_to_json(const ExperimentReport& r,
                                      bool include_timing = true);
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& recs);
std::string curve_csv(const Curve& c);

// Writes <out_dir>/<kind>_report.json, _diagnostics.csv and per-curve CSVs.
void write_report_files(const ExperimentReport& r, const std::string& out_dir);

}  // namespace fns
