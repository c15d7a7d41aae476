#pragma once

#include <utility>
#include <vector>

#include "cascade/field.hpp"

namespace cascade {

// Dyadic smooth partition of unity over the wavenumber lattice,
// psi_0(k) + sum_N psi_N(k) = 1 exactly at every lattice point.
//
// psi_0 = chi(|k|), psi_N = chi(2^{-N}|k|) - chi(2^{-N+1}|k|) with a C^2
// smoothstep cutoff chi (1 on [0,1], 0 on [2,inf)). The last shell
// N_max = log2(n/2) omits the outer cutoff (the lattice has no modes beyond
// 2^{N_max+1}, corner modes |k| up to sqrt(2) 2^{N_max} included), which
// keeps telescoping exact everywhere.
class LPPartition {
 public:
  explicit LPPartition(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int n_shells() const { return n_shells_; }  // shells are 0 .. n_shells

  // psi_N on the lattice, row-major like SpectralScalar.
  const std::vector<double>& shell_multiplier(int N) const;

  static double cutoff(double t);  // chi

 private:
  Grid grid_;
  int n_shells_ = 0;
  std::vector<std::vector<double>> multipliers_;
};

ScalarField lp_project(const ScalarField& f, const LPPartition& part, int N);
VectorField lp_project(const VectorField& v, const LPPartition& part, int N);

// One row per shell: band [2^N, 2^{N+1}) and the piecewise-constant spectrum
// value at the band's left edge, E_LP(2^N) = 2^{-N} ||u_N||_2^2.
struct SpectrumBand {
  int shell;
  double k_lo, k_hi;
  double value;
};
std::vector<SpectrumBand> lp_energy_spectrum(const VectorField& u,
                                             const LPPartition& part);
std::vector<SpectrumBand> lp_enstrophy_spectrum(const ScalarField& omega,
                                                const LPPartition& part);

struct BesovNorm {
  double value = 0.0;
  int argmax_shell = 0;
  // Set when the sup lands on the last available shell; the true norm is
  // then likely unresolved at this resolution.
  bool truncated = false;
};
BesovNorm besov_norm(const ScalarField& f, double s, double p,
                     const LPPartition& part);

// Uniform-bound diagnostics for a run of velocity snapshots:
// C(t) = sup_{k > k0} k^3 E_LP(k, t) / eta^{2/3} and the enstrophy analogue
// sup_{k > k0} k Omega_LP(k, t) / eta^{2/3}, with k running over band edges.
// Also tabulates the reference envelope gamma^2 k^{-3} (k_d / k)^6 at the
// band edges, gamma = time-averaged ||grad u||_inf, k_d = nu^{-1/2} eta^{1/6}
// (skipped when nu = 0).
struct HypothesisReport {
  std::vector<double> times;
  std::vector<double> c_energy;     // C(t)
  std::vector<double> c_enstrophy;  // enstrophy analogue
  double mean_c_energy = 0.0;
  double mean_c_enstrophy = 0.0;
  double k0 = 0.0;
  double eta = 0.0;
  double nu = 0.0;
  double gamma = 0.0;  // time-averaged ||grad u||_inf
  double k_d = 0.0;    // dissipation wavenumber, 0 when nu = 0
  std::vector<std::pair<double, double>> envelope;  // (k, bound)
};
HypothesisReport hypothesis_diagnostics(
    const std::vector<std::pair<double, VectorField>>& run,
    const LPPartition& part, int k0, double eta, double nu = 0.0);

}  // namespace cascade
