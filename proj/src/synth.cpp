#include "cascade/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "cascade/fft.hpp"
#include "cascade/mollifier.hpp"
#include "cascade/operators.hpp"
#include "cascade/rng.hpp"

namespace cascade {
namespace {

// Fill dyadic annuli 2^{N-1} < |k| <= 2^N with random-phase modes whose
// amplitudes follow |k|^{-(1+s)} within the shell, each shell normalized to
// L2 mass shell_mass(N). Nyquist lines are excluded so Hermitian
// symmetrization is exact.
template <typename MassFn>
ScalarField shell_spectrum_field(const Grid& grid, double s, MassFn&& mass,
                                 std::uint64_t seed) {
  const int n = grid.n;
  const int n_shells = static_cast<int>(std::lround(std::log2(n / 2)));
  SpectralScalar F(grid);

  for (int N = 1; N <= n_shells; ++N) {
    const double lo = std::ldexp(1.0, N - 1);
    const double hi = std::ldexp(1.0, N);
    // two passes: accumulate the profile normalization, then set modes
    double profile_sq = 0.0;
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const int kx = grid.wave(ix);
        const int ky = grid.wave(iy);
        if (std::abs(kx) >= n / 2 || std::abs(ky) >= n / 2) continue;
        const double km = std::hypot(double(kx), double(ky));
        if (!(km > lo) || km > hi) continue;
        profile_sq += std::pow(km, -2.0 - 2.0 * s);
      }
    if (profile_sq == 0.0) continue;
    const double target = mass(N);
    // ||f||_2^2 = 4 pi^2 sum_k |f_hat(k)|^2 in the mean-normalized convention
    const double scale =
        std::sqrt(target * target / (4.0 * M_PI * M_PI * profile_sq));
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const int kx = grid.wave(ix);
        const int ky = grid.wave(iy);
        if (std::abs(kx) >= n / 2 || std::abs(ky) >= n / 2) continue;
        const double km = std::hypot(double(kx), double(ky));
        if (!(km > lo) || km > hi) continue;
        const double amp = scale * std::pow(km, -1.0 - s);
        const double phase =
            2.0 * M_PI *
            counter_uniform(seed, static_cast<std::uint64_t>(N),
                            grid.index(ix, iy));
        F.at(ix, iy) = amp * std::polar(1.0, phase);
      }
  }

  // Hermitian symmetrization; |k| is preserved, so each annulus can then be
  // rescaled to hit its target L2 mass exactly rather than in expectation.
  SpectralScalar Fs(grid);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const int jx = (n - ix) % n;
      const int jy = (n - iy) % n;
      Fs.at(ix, iy) =
          (F.at(ix, iy) + std::conj(F.at(jx, jy))) * inv_sqrt2;
    }
  Fs.coefficients[0] = 0.0;

  for (int N = 1; N <= n_shells; ++N) {
    const double lo = std::ldexp(1.0, N - 1);
    const double hi = std::ldexp(1.0, N);
    double mass_sq = 0.0;
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double km =
            std::hypot(double(grid.wave(ix)), double(grid.wave(iy)));
        if (!(km > lo) || km > hi) continue;
        mass_sq += std::norm(Fs.at(ix, iy));
      }
    mass_sq *= 4.0 * M_PI * M_PI;
    if (mass_sq <= 0.0) continue;
    const double rescale = mass(N) / std::sqrt(mass_sq);
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double km =
            std::hypot(double(grid.wave(ix)), double(grid.wave(iy)));
        if (!(km > lo) || km > hi) continue;
        Fs.at(ix, iy) *= rescale;
      }
  }
  return fft_inverse(Fs);
}

}  // namespace

GenSpec::Kind gen_kind_from_string(const std::string& name) {
  if (name == "single_mode") return GenSpec::Kind::single_mode;
  if (name == "taylor_green") return GenSpec::Kind::taylor_green;
  if (name == "vortex_patch") return GenSpec::Kind::vortex_patch;
  if (name == "besov_random") return GenSpec::Kind::besov_random;
  if (name == "kraichnan") return GenSpec::Kind::kraichnan;
  throw std::invalid_argument("unknown generator kind: " + name);
}

std::string to_string(GenSpec::Kind kind) {
  switch (kind) {
    case GenSpec::Kind::single_mode: return "single_mode";
    case GenSpec::Kind::taylor_green: return "taylor_green";
    case GenSpec::Kind::vortex_patch: return "vortex_patch";
    case GenSpec::Kind::besov_random: return "besov_random";
    case GenSpec::Kind::kraichnan: return "kraichnan";
  }
  return "?";
}

ScalarField generate(const GenSpec& spec, const Grid& grid) {
  switch (spec.kind) {
    case GenSpec::Kind::single_mode: {
      ScalarField f(grid);
      for (int iy = 0; iy < grid.n; ++iy)
        for (int ix = 0; ix < grid.n; ++ix)
          f.at(ix, iy) =
              std::sin(spec.mode_kx * grid.x(ix) + spec.mode_ky * grid.y(iy));
      return f;
    }
    case GenSpec::Kind::taylor_green: {
      ScalarField f(grid);
      for (int iy = 0; iy < grid.n; ++iy)
        for (int ix = 0; ix < grid.n; ++ix)
          f.at(ix, iy) = 2.0 * std::cos(grid.x(ix)) * std::cos(grid.y(iy));
      return f;
    }
    case GenSpec::Kind::vortex_patch: {
      if (!(spec.patch_radius > 0.0) || spec.patch_radius >= M_PI)
        throw std::invalid_argument("vortex_patch: radius out of range");
      ScalarField f(grid);
      for (int iy = 0; iy < grid.n; ++iy)
        for (int ix = 0; ix < grid.n; ++ix) {
          const double px = grid.x(ix) - M_PI;
          const double py = grid.y(iy) - M_PI;
          f.at(ix, iy) = std::hypot(px, py) <= spec.patch_radius ? 1.0 : 0.0;
        }
      const double ell =
          spec.patch_smoothing > 0.0 ? spec.patch_smoothing : 2.0 * grid.dx;
      Mollifier m = Mollifier::bump(M_PI / 4.0);
      f = filter(f, m, ell / m.support_radius());
      const double mu = mean(f);
      for (double& v : f.values) v -= mu;
      return f;
    }
    case GenSpec::Kind::besov_random: {
      if (std::abs(spec.s) > 4.0)
        throw std::invalid_argument("besov_random: |s| > 4 unresolvable");
      const double m0 = spec.shell_mass;
      const double s = spec.s;
      return shell_spectrum_field(
          grid, s, [m0, s](int N) { return m0 * std::exp2(-s * N); },
          spec.seed);
    }
    case GenSpec::Kind::kraichnan: {
      if (!(spec.spectrum_c > 0.0) || spec.k0 < 1)
        throw std::invalid_argument("kraichnan: need C > 0, k0 >= 1");
      const double c = spec.spectrum_c;
      const double k0 = spec.k0;
      const bool logc = spec.log_correction;
      // Omega_LP(2^N) = 2^{-N} ||omega_N||^2 = C 2^{-N}: equal shell masses
      return shell_spectrum_field(
          grid, 0.0,
          [c, k0, logc](int N) {
            double mass_sq = c;
            if (logc) {
              const double l = std::log(std::ldexp(1.0, N) / k0);
              mass_sq *= std::pow(std::max(l, 1.0), -1.0 / 3.0);
            }
            return std::sqrt(mass_sq);
          },
          spec.seed);
    }
  }
  throw std::logic_error("generate: unhandled kind");
}

}  // namespace cascade
