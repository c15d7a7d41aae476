#include "cascade/operators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cascade/fft.hpp"

namespace cascade {
namespace {

using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

// Wavenumber with the Nyquist mode dropped, for odd-derivative operators.
inline double deriv_wave(const Grid& g, int i) {
  int k = g.wave(i);
  return k == g.n / 2 ? 0.0 : static_cast<double>(k);
}

template <typename Fn>
SpectralScalar map_spectrum(const ScalarField& f, Fn&& fn) {
  SpectralScalar F = fft_forward(f);
  const int n = F.grid.n;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      fn(F.at(ix, iy), deriv_wave(F.grid, ix), deriv_wave(F.grid, iy));
  return F;
}

}  // namespace

VectorField gradient(const ScalarField& f) {
  SpectralScalar F = fft_forward(f);
  SpectralScalar Gx(f.grid), Gy(f.grid);
  const int n = f.grid.n;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double kx = deriv_wave(f.grid, ix);
      const double ky = deriv_wave(f.grid, iy);
      const complexd c = F.at(ix, iy);
      Gx.at(ix, iy) = kI * kx * c;
      Gy.at(ix, iy) = kI * ky * c;
    }
  VectorField out(f.grid);
  out.x_component = fft_inverse(Gx);
  out.y_component = fft_inverse(Gy);
  return out;
}

VectorField perp_gradient(const ScalarField& f) {
  VectorField g = gradient(f);
  VectorField out(f.grid);
  out.x_component = std::move(g.y_component);
  out.y_component = std::move(g.x_component);
  for (double& v : out.y_component.values) v = -v;
  return out;
}

ScalarField divergence(const VectorField& v) {
  SpectralScalar Fx = fft_forward(v.x_component);
  SpectralScalar Fy = fft_forward(v.y_component);
  const int n = v.grid.n;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double kx = deriv_wave(v.grid, ix);
      const double ky = deriv_wave(v.grid, iy);
      Fx.at(ix, iy) = kI * (kx * Fx.at(ix, iy) + ky * Fy.at(ix, iy));
    }
  return fft_inverse(Fx);
}

ScalarField laplacian(const ScalarField& f) {
  SpectralScalar F = fft_forward(f);
  const int n = f.grid.n;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double kx = f.grid.wave(ix);
      const double ky = f.grid.wave(iy);
      F.at(ix, iy) *= -(kx * kx + ky * ky);
    }
  return fft_inverse(F);
}

ScalarField curl2d(const VectorField& v) {
  SpectralScalar Fx = fft_forward(v.x_component);
  SpectralScalar Fy = fft_forward(v.y_component);
  const int n = v.grid.n;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double kx = deriv_wave(v.grid, ix);
      const double ky = deriv_wave(v.grid, iy);
      Fx.at(ix, iy) = kI * (kx * Fy.at(ix, iy) - ky * Fx.at(ix, iy));
    }
  return fft_inverse(Fx);
}

VectorField biot_savart(const ScalarField& omega, double* removed_mean) {
  SpectralScalar W = fft_forward(omega);
  if (removed_mean) *removed_mean = W.coefficients[0].real();
  W.coefficients[0] = 0.0;
  SpectralScalar Ux(omega.grid), Uy(omega.grid);
  const int n = omega.grid.n;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double kx = deriv_wave(omega.grid, ix);
      const double ky = deriv_wave(omega.grid, iy);
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      // u = perp-gradient of the stream function (-Laplace)^{-1} omega
      const complexd psi = W.at(ix, iy) / k2;
      Ux.at(ix, iy) = kI * ky * psi;
      Uy.at(ix, iy) = -kI * kx * psi;
    }
  VectorField u(omega.grid);
  u.x_component = fft_inverse(Ux);
  u.y_component = fft_inverse(Uy);
  return u;
}

double lp_norm(const ScalarField& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  const double da = f.grid.dx * f.grid.dx;
  double sum = 0.0;
  for (double v : f.values) sum += std::pow(std::abs(v), p);
  return std::pow(sum * da, 1.0 / p);
}

double lp_norm(const VectorField& v, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  const auto& ax = v.x_component.values;
  const auto& ay = v.y_component.values;
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i)
      m = std::max(m, std::hypot(ax[i], ay[i]));
    return m;
  }
  const double da = v.grid.dx * v.grid.dx;
  double sum = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i)
    sum += std::pow(std::hypot(ax[i], ay[i]), p);
  return std::pow(sum * da, 1.0 / p);
}

double mean(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s / f.values.size();
}

void dealias_spectrum(SpectralScalar& F) {
  const int n = F.grid.n;
  const int kc = n / 3;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      if (std::abs(F.grid.wave(ix)) > kc || std::abs(F.grid.wave(iy)) > kc)
        F.at(ix, iy) = 0.0;
    }
}

ScalarField dealias(const ScalarField& f) {
  SpectralScalar F = fft_forward(f);
  dealias_spectrum(F);
  ScalarField out = fft_inverse(F);
  out.time_tag = f.time_tag;
  return out;
}

ScalarField dealiased_product(const ScalarField& f, const ScalarField& g) {
  if (f.grid != g.grid)
    throw std::invalid_argument("dealiased_product: grid mismatch");
  ScalarField prod(f.grid);
  for (std::size_t i = 0; i < prod.values.size(); ++i)
    prod.values[i] = f.values[i] * g.values[i];
  return dealias(prod);
}

ScalarField spectral_shift(const ScalarField& f, double ell_x, double ell_y) {
  SpectralScalar F = fft_forward(f);
  const int n = f.grid.n;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double kx = f.grid.wave(ix);
      const double ky = f.grid.wave(iy);
      F.at(ix, iy) *= std::exp(kI * (kx * ell_x + ky * ell_y));
    }
  ScalarField out = fft_inverse(F);
  out.time_tag = f.time_tag;
  return out;
}

}  // namespace cascade
