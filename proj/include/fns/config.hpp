#pragma once

#include <string>
#include <vector>

#include "fns/functionals.hpp"
#include "fns/multipliers.hpp"
#include "fns/random_field.hpp"

#include "json.hpp"

namespace fns {

enum class ExperimentKind { conserve, identity, acl, morawetz, lemma1, scatter };
enum class DataKind { planewave, gaussian, random };

const char* to_string(ExperimentKind k);
const char* to_string(DataKind k);

struct DataSpec {
  DataKind kind = DataKind::gaussian;
  double amplitude = 1.0;
  double width = 1.0;                // gaussian bump width
  std::vector<double> center;        // empty = box center
  std::vector<int> mode;             // plane-wave lattice indices
  RandomFieldSpec random;            // seed/band/profile for random data
};

// One study's full parameter set. Serializes losslessly to JSON so a report
// can carry it and be re-run bit-identically.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::conserve;
  int dim = 1;
  int points = 64;
  double length = 2.0 * kPi;
  DataSpec data;
  double T = 1.0;
  double dt = 1e-2;
  int snapshot_stride = 1;
  double s = 1.0;
  std::vector<double> N_list;
  DealiasRule dealias = DealiasRule::half_rule;
  bool nonlinearity = true;
  int seeds = 20;
  std::vector<double> lambdas{2.0, 4.0};
  std::vector<StrichartzPair> pairs;

  Grid grid() const { return make_grid(dim, points, length); }
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Strict INI-style parser over sections [experiment] [grid] [data] [time]
// [imethod]; unknown sections or keys are errors, as are violated
// constraints. The diagnostic names the offending key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

nlohmann::ordered_json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);

// Build the initial field a config describes.
ComplexField make_initial_data(const ExperimentConfig& c);

}  // namespace fns
