#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cascade/field.hpp"
#include "cascade/flux.hpp"
#include "cascade/hfunction.hpp"
#include "cascade/mollifier.hpp"

namespace cascade {

// Band-limited solenoidal forcing, white in time, applied as a discrete kick
// omega_hat += amplitude sqrt(dt) xi after each step. xi is Hermitian
// unit-normal per mode in the band, counter-based on (seed, step), so runs
// are reproducible.
struct ForcingSpec {
  int k_lo = 4;
  int k_hi = 6;
  double amplitude = 0.0;  // 0 disables forcing
  std::uint64_t seed = 0;
};

struct SolverConfig {
  int grid_n = 256;
  double nu = 0.0;
  double dt = 1e-3;
  double t_end = 1.0;
  bool dealias = true;  // 2/3 rule on the advection product
  double hypofriction_alpha = 0.0;
  int hypofriction_kmax = 2;
  double snapshot_interval = 0.1;
  ForcingSpec forcing;

  void validate() const;
};

struct AuditRow {
  double t;
  double energy;        // (1/2) ||u||_2^2
  double enstrophy;     // (1/2) ||omega||_2^2
  double palinstrophy;  // (1/2) ||grad omega||_2^2
  double dissipation;   // nu ||grad omega||_2^2
  double forcing_input;  // exact energy added by the kick ending this step
};

struct RunRecord {
  SolverConfig config;
  std::vector<std::pair<double, ScalarField>> snapshots;
  std::vector<AuditRow> audit;
  bool resolution_warning = false;  // k_d > n/3 at some audit time
};

// One RK4 step of dt with integrating-factor treatment of the linear part
// -nu k^2 - alpha 1_{|k| <= kmax}. The CFL guard dt <= 0.5 dx / ||u||_inf is
// enforced by internal substep halving; throws after 10 halvings (blow-up)
// or on NaN.
ScalarField step(const ScalarField& omega, const SolverConfig& config);

RunRecord run(const SolverConfig& config, const ScalarField& omega0);

struct NuSweepRow {
  double nu;
  double mean_dissipation;  // time average of int nu h''(omega)|grad omega|^2
  FluxCurve flux;           // at the final common time
};

std::vector<NuSweepRow> nu_sweep(const SolverConfig& base,
                                 const ScalarField& omega0,
                                 const std::vector<double>& nu_list,
                                 const HFunction& h, const Mollifier& m,
                                 const std::vector<double>& eps_list);

}  // namespace cascade
