#pragma once

#include <cstdint>
#include <string>

#include "cascade/field.hpp"

namespace cascade {

// Deterministic-by-seed vorticity generators. All outputs are exactly
// zero-mean; the random kinds build Hermitian-symmetric spectra shell by
// shell with counter-based phases (seed, shell) -> stream, so the same spec
// reproduces the same field bitwise.
struct GenSpec {
  enum class Kind {
    single_mode,
    taylor_green,
    vortex_patch,
    besov_random,
    kraichnan
  };
  Kind kind = Kind::single_mode;

  // single_mode: omega = sin(kx x + ky y)
  int mode_kx = 1, mode_ky = 0;

  // vortex_patch: unit disk indicator, mollified, mean-subtracted
  double patch_radius = 1.0;
  double patch_smoothing = 0.0;  // smoothing length; 0 means 2 dx

  // besov_random: shell L2 masses ||omega_N||_2 = shell_mass 2^{-s N},
  // within-shell amplitudes proportional to |k|^{-(1+s)}
  double s = 0.0;
  double shell_mass = 1.0;

  // kraichnan: Omega_LP(2^N) = spectrum_c 2^{-N}, i.e. equal shell masses,
  // with optional [ln(k/k0)]^{-1/3} correction
  double spectrum_c = 1.0;
  int k0 = 1;
  bool log_correction = false;

  std::uint64_t seed = 0;
};

GenSpec::Kind gen_kind_from_string(const std::string& name);
std::string to_string(GenSpec::Kind kind);

ScalarField generate(const GenSpec& spec, const Grid& grid);

}  // namespace cascade
