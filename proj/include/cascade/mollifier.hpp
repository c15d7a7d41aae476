#pragma once

#include <map>
#include <memory>
#include <ostream>
#include <shared_mutex>
#include <vector>

#include "cascade/field.hpp"

namespace cascade {

// Radial C^infinity bump kernel phi with compact support and unit integral
// over R^2. phi_eps(x) = eps^{-2} phi(x/eps). Spectral multipliers are built
// by sampling phi_eps on the grid and transforming; they are cached per
// (grid, eps) with a read-mostly contract.
class Mollifier {
 public:
  // phi(r) = A exp(-1/(1 - (r/R)^2)) for r < R, zero otherwise.
  // Requires 0 < support_radius <= pi/4.
  static Mollifier bump(double support_radius);

  double profile(double r) const;             // phi(r)
  double profile_derivative(double r) const;  // d phi / d r
  double support_radius() const { return radius_; }
  double amplitude() const { return amplitude_; }

  // integral over R^2 of |grad phi| = 2 pi * int_0^R |phi'(r)| r dr
  double grad_l1() const { return grad_l1_; }
  // integral over R^2 of phi(x) |x|, normalized moment used in Young-type bounds
  double abs_first_moment() const { return first_moment_; }

  // Multiplier values phi_eps_hat(k) on the wavenumber lattice, row-major,
  // normalized so the k = 0 entry is exactly 1 (means are preserved).
  // Requires 2*dx <= eps * support_radius <= pi.
  std::shared_ptr<const std::vector<double>> multiplier(const Grid& grid,
                                                        double eps) const;

  void dump_profile_csv(std::ostream& os, int samples = 256) const;

 private:
  Mollifier() = default;

  double radius_ = 0.0;
  double amplitude_ = 0.0;
  double grad_l1_ = 0.0;
  double first_moment_ = 0.0;

  // shared so Mollifier stays copyable; copies share one multiplier cache
  struct Cache {
    std::shared_mutex mutex;
    std::map<std::pair<int, double>,
             std::shared_ptr<const std::vector<double>>>
        entries;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// phi_eps * f via spectral multiplication; preserves the mean exactly.
ScalarField filter(const ScalarField& f, const Mollifier& m, double eps);
VectorField filter(const VectorField& v, const Mollifier& m, double eps);

// tau_eps(f, g) = (fg)_eps - f_eps g_eps, products 2/3-dealiased.
ScalarField commutator_tau(const ScalarField& f, const ScalarField& g,
                           const Mollifier& m, double eps);

// sigma_eps = (u omega)_eps - u_eps omega_eps, componentwise commutator.
VectorField subgrid_stress(const VectorField& u, const ScalarField& omega,
                           const Mollifier& m, double eps);
VectorField commutator_tau(const VectorField& u, const ScalarField& omega,
                           const Mollifier& m, double eps);

// Delta_ell f = f(x + ell) - f(x), shift done spectrally.
ScalarField increment(const ScalarField& f, double ell_x, double ell_y);

}  // namespace cascade
