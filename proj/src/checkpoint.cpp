#include "fns/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fns {

namespace {

constexpr char kMagic[8] = {'F', '4', 'N', 'S', 'C', 'H', 'K', '1'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

template <typename T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("checkpoint: truncated file");
  return v;
}

}  // namespace

void write_checkpoint(const std::string& path, const ComplexField& field,
                      double time, double dt) {
  if (field.rep() != Representation::physical)
    throw std::invalid_argument("write_checkpoint: physical field required");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("write_checkpoint: cannot open " + path);
  const Grid& g = field.grid();
  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.points));
  put<std::uint32_t>(os, 0);
  put<double>(os, g.length);
  put<double>(os, time);
  put<double>(os, dt);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(field.size()));
  for (const auto& v : field.values()) {
    put<double>(os, v.real());
    put<double>(os, v.imag());
  }
  if (!os) throw std::runtime_error("write_checkpoint: write failed");
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_checkpoint: cannot open " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("read_checkpoint: bad magic");
  auto version = get<std::uint32_t>(is);
  if (version != kVersion)
    throw std::runtime_error("read_checkpoint: unsupported version " +
                             std::to_string(version));
  Checkpoint cp;
  int dim = static_cast<int>(get<std::uint32_t>(is));
  int points = static_cast<int>(get<std::uint32_t>(is));
  get<std::uint32_t>(is);  // reserved
  double length = get<double>(is);
  cp.grid = make_grid(dim, points, length);
  cp.time = get<double>(is);
  cp.dt = get<double>(is);
  auto count = get<std::uint64_t>(is);
  if (count != cp.grid.size())
    throw std::runtime_error("read_checkpoint: value count mismatch");
  cp.field = ComplexField(cp.grid, Representation::physical);
  for (std::size_t i = 0; i < cp.field.size(); ++i) {
    double re = get<double>(is);
    double im = get<double>(is);
    cp.field[i] = {re, im};
  }
  return cp;
}

}  // namespace fns
