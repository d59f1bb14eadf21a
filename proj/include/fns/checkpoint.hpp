#pragma once

#include <string>

#include "fns/field.hpp"

namespace fns {

// Self-describing binary container, little-endian throughout:
//   bytes 0..7   magic "F4NSCHK1"
//   u32          format version (1)
//   u32          dim
//   u32          points per axis
//   u32          reserved (0)
//   f64          box length
//   f64          time
//   f64          dt
//   u64          value count (= points^dim)
//   then count * (f64 re, f64 im) in row-major axis order.
struct Checkpoint {
  Grid grid;
  double time = 0.0;
  double dt = 0.0;
  ComplexField field;  // physical representation
};

void write_checkpoint(const std::string& path, const ComplexField& field,
                      double time, double dt);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace fns
