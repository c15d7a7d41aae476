#include "cascade/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace cascade {
namespace {

// One forward/backward plan pair per grid size, planned with FFTW_UNALIGNED
// so they can be executed on arbitrary caller buffers via the new-array
// interface (which is thread-safe; plan creation is not, hence the mutex).
struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

PlanPair plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
  PlanPair p;
  p.forward = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.backward = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  cache.emplace(n, p);
  return p;
}

}  // namespace

SpectralScalar fft_forward(const ScalarField& f) {
  if (!f.finite())
    throw std::domain_error("fft_forward: non-finite input samples");
  const int n = f.grid.n;
  SpectralScalar F(f.grid);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    F.coefficients[i] = f.values[i];
  auto* data = reinterpret_cast<fftw_complex*>(F.coefficients.data());
  fftw_execute_dft(plans_for(n).forward, data, data);
  const double scale = 1.0 / f.grid.size();
  for (auto& c : F.coefficients) c *= scale;
  return F;
}

ScalarField fft_inverse(const SpectralScalar& F) {
  const int n = F.grid.n;
  std::vector<std::complex<double>> work = F.coefficients;
  auto* data = reinterpret_cast<fftw_complex*>(work.data());
  fftw_execute_dft(plans_for(n).backward, data, data);
  ScalarField f(F.grid);
  for (std::size_t i = 0; i < work.size(); ++i) f.values[i] = work[i].real();
  return f;
}

}  // namespace cascade
