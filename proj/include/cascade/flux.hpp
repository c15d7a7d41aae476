#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cascade/field.hpp"
#include "cascade/hfunction.hpp"
#include "cascade/mollifier.hpp"

namespace cascade {

// Scale-resolved flux integrals, one row per eps.
struct FluxCurve {
  std::vector<double> eps_values;
  std::vector<double> flux_integral;      // int Z_{h,eps} dx
  std::vector<double> flux_abs_integral;  // int |Z_{h,eps}| dx
  std::string method_tag;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double eps_lo = 0.0, eps_hi = 0.0;  // fit window
};

// Z_{h,eps} = -h''(omega_eps) grad(omega_eps) . sigma_eps. Positive values
// are a sink of h(omega_eps) at scales > eps (forward cascade).
ScalarField defect_field(const ScalarField& omega, const HFunction& h,
                         const Mollifier& m, double eps);

// Ztilde_eps = (omega/2) div[(omega u)_eps] - (omega/2) (u . grad) omega_eps
ScalarField defect_tilde(const ScalarField& omega, const Mollifier& m,
                         double eps);

// Quadrature rule for the ell-integral in structure_flux. Disk restricts the
// sum to lattice points inside the support disk with analytic grad(phi_eps)
// weights, cost O(n^2 (eps R / dx)^2). Exact uses the spectral gradient of
// the sampled kernel over the whole lattice, O(n^4); with those weights the
// lattice sum satisfies summation by parts exactly, so the divergence
// identity against defect_tilde holds to machine precision.
enum class StructureQuadrature { disk, exact };

// (1/4) sum over lattice ell of grad(phi_eps)(ell) . Delta_ell u
// |Delta_ell omega|^2 dx^2
ScalarField structure_flux(const ScalarField& omega, const Mollifier& m,
                           double eps,
                           StructureQuadrature quad = StructureQuadrature::disk);

struct ResidualDiagnostics {
  ScalarField r;        // r_eps = -div tau_eps(u, omega)
  double lemma_ratio;   // ||div tau||_1 / (||u||_{W^{1,2}} ||omega||_2)
};
ResidualDiagnostics residual_field(const ScalarField& omega, const Mollifier& m,
                                   double eps);

// sigma model closures, C eps^2 D_eps . grad(omega_eps) and
// -C eps^2 S_eps grad(omega_eps); S_eps = sqrt(max(0, -det(sym D_eps))).
VectorField model_stress_nonlinear(const ScalarField& omega, const Mollifier& m,
                                   double eps, double c_model);
VectorField model_stress_eddy(const ScalarField& omega, const Mollifier& m,
                              double eps, double c_model);

// Cosine similarity of two vector fields over the grid (diagnostic only).
double vector_field_cosine(const VectorField& a, const VectorField& b);

// nu h''(omega) |grad omega|^2, pointwise.
ScalarField viscous_dissipation(const ScalarField& omega, const HFunction& h,
                                double nu);

// For each eps: time series of -d/dt int h(omega_eps) dx by centered
// differences (first and last snapshots dropped). Needs >= 3 snapshots at
// uniform spacing.
struct DissipationSeries {
  double eps;
  std::vector<double> times;
  std::vector<double> rate;
};
std::vector<DissipationSeries> dissipation_rate(
    const std::vector<std::pair<double, ScalarField>>& run, const HFunction& h,
    const Mollifier& m, const std::vector<double>& eps_list);

FluxCurve flux_curve(const ScalarField& omega, const HFunction& h,
                     const Mollifier& m, const std::vector<double>& eps_list);

// Least-squares log-log fit of vals vs eps restricted to [eps_lo, eps_hi].
SlopeFit fit_loglog_slope(const std::vector<double>& eps,
                          const std::vector<double>& vals, double eps_lo,
                          double eps_hi);

constexpr double kDefaultModelConstant = 1.0 / 12.0;

}  // namespace cascade
