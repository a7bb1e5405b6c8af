#include "disperlim/spectral/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "disperlim/error.hpp"

namespace disperlim::spectral {
namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// FFTW's planner is not thread safe; execution with fftw_execute_dft_* is.
// Plans live for the life of the process.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(const Grid& g) {
  static std::map<std::vector<int>, PlanPair> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(g.dims());
  if (it != cache.end()) return it->second;

  const int r = g.rank();
  std::vector<double> re(g.real_size());
  std::vector<fftw_complex> sp(g.spectral_size());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p;
  p.r2c = fftw_plan_dft_r2c(r, g.dims().data(), re.data(), sp.data(), flags);
  p.c2r = fftw_plan_dft_c2r(r, g.dims().data(), sp.data(), re.data(), flags);
  if (!p.r2c || !p.c2r) throw NumericalError("FFTW plan creation failed");
  return cache.emplace(g.dims(), p).first->second;
}

}  // namespace

SpectralField forward_transform(const RealField& f) {
  if (!f.all_finite()) throw NumericalError("forward_transform: non-finite input");
  const Grid& g = f.grid();
  const PlanPair& p = plans_for(g);
  SpectralField out(g);
  // FFTW never writes to the r2c input, but its signature is not const.
  auto* in = const_cast<double*>(f.values().data());
  fftw_execute_dft_r2c(p.r2c, in, reinterpret_cast<fftw_complex*>(out.coeffs().data()));
  out *= 1.0 / static_cast<double>(g.real_size());
  return out;
}

RealField inverse_transform(const SpectralField& F) {
  const Grid& g = F.grid();
  const PlanPair& p = plans_for(g);
  // c2r overwrites its input.
  std::vector<cplx> scratch(F.coeffs().begin(), F.coeffs().end());
  RealField out(g);
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.values().data());
  return out;
}

}  // namespace disperlim::spectral
