#include "fns/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace fns::detail {

namespace {

struct PlanEntry {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~PlanEntry() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

std::mutex g_mutex;
std::map<std::pair<int, int>, std::shared_ptr<PlanEntry>> g_plans;
std::map<std::tuple<int, int, double>, std::shared_ptr<const SpectralTables>>
    g_tables;

// Plans are created with FFTW_UNALIGNED so they can execute on any buffer
// via fftw_execute_dft (which is thread-safe; planning is not).
std::shared_ptr<PlanEntry> plans_for(const Grid& g) {
  std::lock_guard<std::mutex> lock(g_mutex);
  auto key = std::make_pair(g.dim, g.points);
  auto it = g_plans.find(key);
  if (it != g_plans.end()) return it->second;

  auto entry = std::make_shared<PlanEntry>();
  std::vector<int> dims(g.dim, g.points);
  std::vector<cplx> a(g.size()), b(g.size());
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  entry->fwd = fftw_plan_dft(g.dim, dims.data(), pa, pb, FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
  entry->bwd = fftw_plan_dft(g.dim, dims.data(), pa, pb, FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!entry->fwd || !entry->bwd)
    throw std::runtime_error("fftw plan creation failed");
  g_plans[key] = entry;
  return entry;
}

}  // namespace

void dft_forward(const Grid& g, const cplx* in, cplx* out) {
  auto plans = plans_for(g);
  fftw_execute_dft(plans->fwd,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / static_cast<double>(g.size());
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) out[i] *= scale;
}

void dft_backward(const Grid& g, const cplx* in, cplx* out) {
  auto plans = plans_for(g);
  fftw_execute_dft(plans->bwd,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

std::shared_ptr<const SpectralTables> spectral_tables(const Grid& g) {
  {
    std::lock_guard<std::mutex> lock(g_mutex);
    auto key = std::make_tuple(g.dim, g.points, g.length);
    auto it = g_tables.find(key);
    if (it != g_tables.end()) return it->second;
  }
  auto tables = std::make_shared<SpectralTables>();
  const std::size_t n = g.size();
  tables->k2.resize(n);
  tables->half_rule_keep.resize(n);
  const double dk = g.freq_step();
  const int P = g.points;
  std::vector<int> idx(g.dim, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double k2 = 0.0;
    bool keep = true;
    for (int a = 0; a < g.dim; ++a) {
      int ka = idx[a] < P / 2 ? idx[a] : idx[a] - P;
      k2 += double(ka) * double(ka);
      if (std::abs(ka) > P / 4) keep = false;
    }
    tables->k2[i] = k2 * dk * dk;
    tables->half_rule_keep[i] = keep ? 1 : 0;
    for (int a = g.dim - 1; a >= 0; --a) {
      if (++idx[a] < P) break;
      idx[a] = 0;
    }
  }
  std::lock_guard<std::mutex> lock(g_mutex);
  auto key = std::make_tuple(g.dim, g.points, g.length);
  auto [it, inserted] = g_tables.emplace(key, tables);
  return it->second;
}

}  // namespace fns::detail
