#include "cascade/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cascade/fft.hpp"
#include "cascade/operators.hpp"

namespace cascade {

double LPPartition::cutoff(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double x = t - 1.0;
  return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

LPPartition::LPPartition(const Grid& grid) : grid_(grid) {
  n_shells_ = static_cast<int>(std::lround(std::log2(grid.n / 2)));
  multipliers_.assign(n_shells_ + 1, std::vector<double>(grid.size(), 0.0));
  for (int iy = 0; iy < grid.n; ++iy)
    for (int ix = 0; ix < grid.n; ++ix) {
      const double km = std::hypot(static_cast<double>(grid.wave(ix)),
                                   static_cast<double>(grid.wave(iy)));
      const std::size_t idx = grid.index(ix, iy);
      multipliers_[0][idx] = cutoff(km);
      for (int N = 1; N < n_shells_; ++N)
        multipliers_[N][idx] =
            cutoff(std::ldexp(km, -N)) - cutoff(std::ldexp(km, -N + 1));
      // last shell: no outer cutoff, so the sum telescopes to 1 exactly
      multipliers_[n_shells_][idx] = 1.0 - cutoff(std::ldexp(km, -n_shells_ + 1));
    }
}

const std::vector<double>& LPPartition::shell_multiplier(int N) const {
  if (N < 0 || N > n_shells_)
    throw std::out_of_range("LPPartition: shell index out of range");
  return multipliers_[N];
}

ScalarField lp_project(const ScalarField& f, const LPPartition& part, int N) {
  if (f.grid != part.grid())
    throw std::invalid_argument("lp_project: grid mismatch");
  const auto& psi = part.shell_multiplier(N);
  SpectralScalar F = fft_forward(f);
  for (std::size_t i = 0; i < F.coefficients.size(); ++i)
    F.coefficients[i] *= psi[i];
  ScalarField out = fft_inverse(F);
  out.time_tag = f.time_tag;
  return out;
}

VectorField lp_project(const VectorField& v, const LPPartition& part, int N) {
  VectorField out(v.grid);
  out.x_component = lp_project(v.x_component, part, N);
  out.y_component = lp_project(v.y_component, part, N);
  return out;
}

namespace {

std::vector<SpectrumBand> shell_spectrum(const std::vector<double>& norms_sq,
                                         int n_shells) {
  std::vector<SpectrumBand> out;
  out.reserve(n_shells + 1);
  for (int N = 0; N <= n_shells; ++N) {
    const double k = std::ldexp(1.0, N);
    out.push_back({N, k, 2.0 * k, norms_sq[N] / k});
  }
  return out;
}

}  // namespace

std::vector<SpectrumBand> lp_energy_spectrum(const VectorField& u,
                                             const LPPartition& part) {
  std::vector<double> norms_sq(part.n_shells() + 1);
  for (int N = 0; N <= part.n_shells(); ++N) {
    const double nn = lp_norm(lp_project(u, part, N), 2.0);
    norms_sq[N] = nn * nn;
  }
  return shell_spectrum(norms_sq, part.n_shells());
}

std::vector<SpectrumBand> lp_enstrophy_spectrum(const ScalarField& omega,
                                                const LPPartition& part) {
  std::vector<double> norms_sq(part.n_shells() + 1);
  for (int N = 0; N <= part.n_shells(); ++N) {
    const double nn = lp_norm(lp_project(omega, part, N), 2.0);
    norms_sq[N] = nn * nn;
  }
  return shell_spectrum(norms_sq, part.n_shells());
}

BesovNorm besov_norm(const ScalarField& f, double s, double p,
                     const LPPartition& part) {
  if (p < 1.0) throw std::invalid_argument("besov_norm: p must be >= 1");
  BesovNorm out;
  for (int N = 0; N <= part.n_shells(); ++N) {
    const double v = std::exp2(s * N) * lp_norm(lp_project(f, part, N), p);
    if (v > out.value) {
      out.value = v;
      out.argmax_shell = N;
    }
  }
  out.truncated = out.argmax_shell == part.n_shells();
  return out;
}

HypothesisReport hypothesis_diagnostics(
    const std::vector<std::pair<double, VectorField>>& run,
    const LPPartition& part, int k0, double eta, double nu) {
  if (run.empty())
    throw std::invalid_argument("hypothesis_diagnostics: empty run");
  if (k0 < 1 || !(eta > 0.0))
    throw std::invalid_argument("hypothesis_diagnostics: need k0 >= 1, eta > 0");

  HypothesisReport rep;
  rep.k0 = k0;
  rep.eta = eta;
  rep.nu = nu;
  const double eta23 = std::pow(eta, 2.0 / 3.0);

  double gamma_sum = 0.0;
  for (const auto& [t, u] : run) {
    rep.times.push_back(t);
    auto espec = lp_energy_spectrum(u, part);
    auto ospec = lp_enstrophy_spectrum(curl2d(u), part);
    double ce = 0.0, co = 0.0;
    for (int N = 0; N <= part.n_shells(); ++N) {
      const double k = espec[N].k_lo;
      if (k <= k0) continue;
      ce = std::max(ce, k * k * k * espec[N].value / eta23);
      co = std::max(co, k * ospec[N].value / eta23);
    }
    rep.c_energy.push_back(ce);
    rep.c_enstrophy.push_back(co);

    VectorField gx = gradient(u.x_component);
    VectorField gy = gradient(u.y_component);
    double gmax = 0.0;
    for (std::size_t i = 0; i < gx.x_component.values.size(); ++i) {
      const double g2 = gx.x_component.values[i] * gx.x_component.values[i] +
                        gx.y_component.values[i] * gx.y_component.values[i] +
                        gy.x_component.values[i] * gy.x_component.values[i] +
                        gy.y_component.values[i] * gy.y_component.values[i];
      gmax = std::max(gmax, g2);
    }
    gamma_sum += std::sqrt(gmax);
  }

  const auto count = static_cast<double>(run.size());
  rep.mean_c_energy =
      std::accumulate(rep.c_energy.begin(), rep.c_energy.end(), 0.0) / count;
  rep.mean_c_enstrophy =
      std::accumulate(rep.c_enstrophy.begin(), rep.c_enstrophy.end(), 0.0) /
      count;
  rep.gamma = gamma_sum / count;
  if (nu > 0.0) {
    rep.k_d = std::pow(eta, 1.0 / 6.0) / std::sqrt(nu);
    for (int N = 0; N <= part.n_shells(); ++N) {
      const double k = std::ldexp(1.0, N);
      if (k <= k0) continue;
      const double ratio = rep.k_d / k;
      rep.envelope.emplace_back(
          k, rep.gamma * rep.gamma / (k * k * k) * std::pow(ratio, 6.0));
    }
  }
  return rep;
}

}  // namespace cascade
