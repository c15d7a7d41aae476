#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "cascade/fft.hpp"
#include "cascade/field.hpp"
#include "cascade/rng.hpp"

namespace testutil {

// Random real zero-mean field, band-limited to |k_i| <= kmax, reproducible.
inline cascade::ScalarField random_field(const cascade::Grid& g,
                                         std::uint64_t seed, int kmax = 0) {
  using namespace cascade;
  if (kmax == 0) kmax = g.n / 3;
  SpectralScalar F(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const int kx = g.wave(ix);
      const int ky = g.wave(iy);
      if (kx == 0 && ky == 0) continue;
      if (!(ky > 0 || (ky == 0 && kx > 0))) continue;
      if (std::abs(kx) > kmax || std::abs(ky) > kmax) continue;
      const std::size_t i = g.index(ix, iy);
      const double u1 = counter_uniform(seed, 99, 2 * i);
      const double u2 = counter_uniform(seed, 99, 2 * i + 1);
      const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
      const std::complex<double> c =
          r * std::polar(1.0, 2.0 * M_PI * u2) / double(kmax);
      F.at(ix, iy) = c;
      F.at((g.n - ix) % g.n, (g.n - iy) % g.n) = std::conj(c);
    }
  return fft_inverse(F);
}

inline double max_abs_diff(const cascade::ScalarField& a,
                           const cascade::ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

inline double max_abs(const cascade::ScalarField& a) {
  double m = 0.0;
  for (double v : a.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace testutil
