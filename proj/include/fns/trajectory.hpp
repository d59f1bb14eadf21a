#pragma once

#include <string>
#include <vector>

#include "fns/field.hpp"

namespace fns {

// Scalar functionals recorded per snapshot. Column order is the CSV contract.
struct DiagnosticsRecord {
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double modified_energy = 0.0;  // E(Iu) for the configured (N, s)
  double h_half_norm = 0.0;      // homogeneous H^{1/2}
  double hs_norm = 0.0;          // H^s for the configured s
  double morawetz_action = 0.0;
  double pointwise_max = 0.0;
  double truncated_mass = 0.0;  // cumulative dealiasing loss up to this time

  bool all_finite() const;
};

struct Snapshot {
  double time = 0.0;
  ComplexField field;
};

// Time-stamped fields at a configured stride plus per-snapshot diagnostics.
struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticsRecord> diagnostics;
  double truncated_mass = 0.0;

  const Snapshot& front() const { return snapshots.front(); }
  const Snapshot& back() const { return snapshots.back(); }
};

}  // namespace fns
