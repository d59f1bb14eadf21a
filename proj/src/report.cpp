#include "fns/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace fns {

namespace {

// Shortest round-trip decimal form, locale-independent.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = std::strtod(buf, nullptr);
  if (back == v) {
    for (int prec = 1; prec < 17; ++prec) {
      char probe[40];
      std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
      if (std::strtod(probe, nullptr) == v) return probe;
    }
  }
  return buf;
}

}  // namespace

void ExperimentReport::add_verdict(const std::string& name, double measured,
                                   double threshold,
                                   const std::string& comparison,
                                   double threshold2) {
  Verdict v{name, measured, threshold, comparison, threshold2, false};
  if (comparison == "<=") v.pass = measured <= threshold;
  else if (comparison == ">=") v.pass = measured >= threshold;
  else if (comparison == "in")
    v.pass = measured >= threshold && measured <= threshold2;
  else throw std::invalid_argument("add_verdict: unknown comparison");
  pass = pass && v.pass;
  verdicts.push_back(std::move(v));
}

nlohmann::ordered_json report_to_json(const ExperimentReport& r,
                                      bool include_timing) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["experiment"] = to_string(r.config.kind);
  j["config"] = config_to_json(r.config);
  nlohmann::ordered_json scal;
  for (const auto& [k, v] : r.scalars) scal[k] = v;
  j["scalars"] = scal;
  nlohmann::ordered_json curves;
  for (const auto& [k, c] : r.curves)
    curves[k] = {{"x", c.x}, {"y", c.y}};
  j["curves"] = curves;
  nlohmann::ordered_json fits;
  for (const auto& [k, f] : r.fits)
    fits[k] = {{"slope", f.at(0)}, {"intercept", f.at(1)}, {"residual", f.at(2)}};
  j["fits"] = fits;
  nlohmann::ordered_json verds = nlohmann::ordered_json::array();
  for (const auto& v : r.verdicts) {
    nlohmann::ordered_json jv;
    jv["name"] = v.name;
    jv["measured"] = v.measured;
    jv["threshold"] = v.threshold;
    jv["comparison"] = v.comparison;
    if (v.comparison == "in") jv["threshold_hi"] = v.threshold2;
    jv["pass"] = v.pass;
    verds.push_back(jv);
  }
  j["verdicts"] = verds;
  j["pass"] = r.pass;
  if (include_timing)
    j["timing"] = {{"wall_ms", r.wall_ms}, {"steps", r.steps}};
  return j;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& recs) {
  std::string out =
      "time,mass,energy,modified_energy,h_half_norm,hs_norm,"
      "morawetz_action,pointwise_max,truncated_mass\n";
  for (const auto& r : recs) {
    out += fmt(r.time) + "," + fmt(r.mass) + "," + fmt(r.energy) + "," +
           fmt(r.modified_energy) + "," + fmt(r.h_half_norm) + "," +
           fmt(r.hs_norm) + "," + fmt(r.morawetz_action) + "," +
           fmt(r.pointwise_max) + "," + fmt(r.truncated_mass) + "\n";
  }
  return out;
}

std::string curve_csv(const Curve& c) {
  std::string out = "x,y\n";
  for (std::size_t i = 0; i < c.x.size(); ++i)
    out += fmt(c.x[i]) + "," + fmt(c.y[i]) + "\n";
  return out;
}

void write_report_files(const ExperimentReport& r, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::string base = std::string(to_string(r.config.kind));
  {
    std::ofstream os(fs::path(out_dir) / (base + "_report.json"));
    os << report_to_json(r).dump(2) << "\n";
  }
  if (!r.diagnostics.empty()) {
    std::ofstream os(fs::path(out_dir) / (base + "_diagnostics.csv"));
    os << diagnostics_csv(r.diagnostics);
  }
  for (const auto& [name, curve] : r.curves) {
    std::ofstream os(fs::path(out_dir) / (base + "_curve_" + name + ".csv"));
    os << curve_csv(curve);
  }
}

}  // namespace fns
