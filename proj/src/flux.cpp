#include "cascade/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cascade/fft.hpp"
#include "cascade/operators.hpp"

namespace cascade {
namespace {

double integral(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s * f.grid.dx * f.grid.dx;
}

double abs_integral(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values) s += std::abs(v);
  return s * f.grid.dx * f.grid.dx;
}

ScalarField raw_product(const ScalarField& f, const ScalarField& g) {
  ScalarField out(f.grid);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = f.values[i] * g.values[i];
  return out;
}

// Increment shifts land on lattice points in both quadratures below, where
// the spectral shift reduces to an index roll; do the roll directly.
void accumulate_shift_term(const ScalarField& ux, const ScalarField& uy,
                           const ScalarField& omega, int lx, int ly, double gx,
                           double gy, ScalarField& acc) {
  const int n = acc.grid.n;
  for (int iy = 0; iy < n; ++iy) {
    const int sy = (iy + ly) % n < 0 ? (iy + ly) % n + n : (iy + ly) % n;
    const std::size_t row = acc.grid.index(0, iy);
    const std::size_t srow = acc.grid.index(0, sy);
    for (int ix = 0; ix < n; ++ix) {
      const int sx = (ix + lx) % n < 0 ? (ix + lx) % n + n : (ix + lx) % n;
      const double dux = ux.values[srow + sx] - ux.values[row + ix];
      const double duy = uy.values[srow + sx] - uy.values[row + ix];
      const double dom = omega.values[srow + sx] - omega.values[row + ix];
      acc.values[row + ix] += (gx * dux + gy * duy) * dom * dom;
    }
  }
}

}  // namespace

ScalarField defect_field(const ScalarField& omega, const HFunction& h,
                         const Mollifier& m, double eps) {
  VectorField u = biot_savart(omega);
  ScalarField omega_eps = filter(omega, m, eps);
  VectorField grad_oe = gradient(omega_eps);
  VectorField sigma = subgrid_stress(u, omega, m, eps);
  ScalarField z(omega.grid);
  for (std::size_t i = 0; i < z.values.size(); ++i) {
    const double dot = grad_oe.x_component.values[i] * sigma.x_component.values[i] +
                       grad_oe.y_component.values[i] * sigma.y_component.values[i];
    z.values[i] = -h.h_doubleprime(omega_eps.values[i]) * dot;
  }
  z.time_tag = omega.time_tag;
  return z;
}

ScalarField defect_tilde(const ScalarField& omega, const Mollifier& m,
                         double eps) {
  VectorField u = biot_savart(omega);
  // Products here are raw (not truncated): the lattice sum in structure_flux
  // sees the same pointwise products, and the divergence identity between the
  // two estimators is exact only when both sides alias identically.
  VectorField omega_u(omega.grid);
  omega_u.x_component = raw_product(omega, u.x_component);
  omega_u.y_component = raw_product(omega, u.y_component);
  ScalarField div_ou = divergence(filter(omega_u, m, eps));
  VectorField grad_oe = gradient(filter(omega, m, eps));
  ScalarField z(omega.grid);
  for (std::size_t i = 0; i < z.values.size(); ++i) {
    const double transport =
        u.x_component.values[i] * grad_oe.x_component.values[i] +
        u.y_component.values[i] * grad_oe.y_component.values[i];
    z.values[i] = 0.5 * omega.values[i] * (div_ou.values[i] - transport);
  }
  z.time_tag = omega.time_tag;
  return z;
}

ScalarField structure_flux(const ScalarField& omega, const Mollifier& m,
                           double eps, StructureQuadrature quad) {
  const Grid& g = omega.grid;
  const double reach = eps * m.support_radius();
  if (reach < 2.0 * g.dx)
    throw std::invalid_argument(
        "structure_flux: support disk below 3x3 lattice cells");
  VectorField u = biot_savart(omega);
  ScalarField acc(g);

  if (quad == StructureQuadrature::disk) {
    const int lmax = static_cast<int>(std::ceil(reach / g.dx));
    const double da = g.dx * g.dx;
    for (int ly = -lmax; ly <= lmax; ++ly)
      for (int lx = -lmax; lx <= lmax; ++lx) {
        const double r = std::hypot(lx * g.dx, ly * g.dx);
        if (r == 0.0 || r >= reach) continue;
        // grad phi_eps at ell: radial derivative eps^{-3} phi'(r/eps)
        const double dphi = m.profile_derivative(r / eps) / (eps * eps * eps);
        const double gx = dphi * (lx * g.dx) / r * da;
        const double gy = dphi * (ly * g.dx) / r * da;
        accumulate_shift_term(u.x_component, u.y_component, omega, lx, ly, gx,
                              gy, acc);
      }
  } else {
    // Weights are the spectral gradient of the sum-normalized sampled kernel,
    // which already carries the dx^2 quadrature factor.
    auto mult = m.multiplier(g, eps);
    SpectralScalar Gx(g), Gy(g);
    const double inv_n2 = 1.0 / static_cast<double>(g.size());
    for (int iy = 0; iy < g.n; ++iy)
      for (int ix = 0; ix < g.n; ++ix) {
        int kx = g.wave(ix);
        int ky = g.wave(iy);
        if (kx == g.n / 2) kx = 0;
        if (ky == g.n / 2) ky = 0;
        const std::complex<double> w =
            (*mult)[g.index(ix, iy)] * inv_n2 * std::complex<double>(0.0, 1.0);
        Gx.at(ix, iy) = w * static_cast<double>(kx);
        Gy.at(ix, iy) = w * static_cast<double>(ky);
      }
    ScalarField gx_field = fft_inverse(Gx);
    ScalarField gy_field = fft_inverse(Gy);
    for (int ly = 0; ly < g.n; ++ly)
      for (int lx = 0; lx < g.n; ++lx) {
        const double gx = gx_field.at(lx, ly);
        const double gy = gy_field.at(lx, ly);
        if (gx == 0.0 && gy == 0.0) continue;
        accumulate_shift_term(u.x_component, u.y_component, omega, lx, ly, gx,
                              gy, acc);
      }
  }

  for (double& v : acc.values) v *= 0.25;
  acc.time_tag = omega.time_tag;
  return acc;
}

ResidualDiagnostics residual_field(const ScalarField& omega, const Mollifier& m,
                                   double eps) {
  VectorField u = biot_savart(omega);
  VectorField tau = commutator_tau(u, omega, m, eps);
  ScalarField div_tau = divergence(tau);

  ResidualDiagnostics out;
  out.r = ScalarField(omega.grid);
  for (std::size_t i = 0; i < out.r.values.size(); ++i)
    out.r.values[i] = -div_tau.values[i];
  out.r.time_tag = omega.time_tag;

  const double u2 = lp_norm(u, 2.0);
  VectorField gux = gradient(u.x_component);
  VectorField guy = gradient(u.y_component);
  const double grad_u2_sq = lp_norm(gux, 2.0) * lp_norm(gux, 2.0) +
                            lp_norm(guy, 2.0) * lp_norm(guy, 2.0);
  const double w12 = std::sqrt(u2 * u2 + grad_u2_sq);
  const double denom = w12 * lp_norm(omega, 2.0);
  out.lemma_ratio = denom > 0.0 ? lp_norm(div_tau, 1.0) / denom : 0.0;
  return out;
}

namespace {

struct FilteredGradients {
  ScalarField d11, d12, d21, d22;  // D_ij = du_i/dx_j of the filtered velocity
  VectorField grad_omega_eps;
};

FilteredGradients filtered_gradients(const ScalarField& omega,
                                     const Mollifier& m, double eps) {
  VectorField u_eps = filter(biot_savart(omega), m, eps);
  VectorField gx = gradient(u_eps.x_component);
  VectorField gy = gradient(u_eps.y_component);
  FilteredGradients out{std::move(gx.x_component), std::move(gx.y_component),
                        std::move(gy.x_component), std::move(gy.y_component),
                        gradient(filter(omega, m, eps))};
  return out;
}

}  // namespace

VectorField model_stress_nonlinear(const ScalarField& omega, const Mollifier& m,
                                   double eps, double c_model) {
  FilteredGradients fg = filtered_gradients(omega, m, eps);
  const double c = c_model * eps * eps;
  VectorField out(omega.grid);
  for (std::size_t i = 0; i < out.x_component.values.size(); ++i) {
    const double ox = fg.grad_omega_eps.x_component.values[i];
    const double oy = fg.grad_omega_eps.y_component.values[i];
    out.x_component.values[i] = c * (fg.d11.values[i] * ox + fg.d12.values[i] * oy);
    out.y_component.values[i] = c * (fg.d21.values[i] * ox + fg.d22.values[i] * oy);
  }
  return out;
}

VectorField model_stress_eddy(const ScalarField& omega, const Mollifier& m,
                              double eps, double c_model) {
  FilteredGradients fg = filtered_gradients(omega, m, eps);
  const double c = c_model * eps * eps;
  VectorField out(omega.grid);
  for (std::size_t i = 0; i < out.x_component.values.size(); ++i) {
    const double b = 0.5 * (fg.d12.values[i] + fg.d21.values[i]);
    const double det = fg.d11.values[i] * fg.d22.values[i] - b * b;
    const double s = std::sqrt(std::max(0.0, -det));
    out.x_component.values[i] = -c * s * fg.grad_omega_eps.x_component.values[i];
    out.y_component.values[i] = -c * s * fg.grad_omega_eps.y_component.values[i];
  }
  return out;
}

double vector_field_cosine(const VectorField& a, const VectorField& b) {
  if (a.grid != b.grid)
    throw std::invalid_argument("vector_field_cosine: grid mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.x_component.values.size(); ++i) {
    const double ax = a.x_component.values[i], ay = a.y_component.values[i];
    const double bx = b.x_component.values[i], by = b.y_component.values[i];
    dot += ax * bx + ay * by;
    na += ax * ax + ay * ay;
    nb += bx * bx + by * by;
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

ScalarField viscous_dissipation(const ScalarField& omega, const HFunction& h,
                                double nu) {
  if (nu < 0.0) throw std::invalid_argument("viscous_dissipation: nu < 0");
  VectorField g = gradient(omega);
  ScalarField out(omega.grid);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double gx = g.x_component.values[i];
    const double gy = g.y_component.values[i];
    out.values[i] = nu * h.h_doubleprime(omega.values[i]) * (gx * gx + gy * gy);
  }
  out.time_tag = omega.time_tag;
  return out;
}

std::vector<DissipationSeries> dissipation_rate(
    const std::vector<std::pair<double, ScalarField>>& run, const HFunction& h,
    const Mollifier& m, const std::vector<double>& eps_list) {
  if (run.size() < 3)
    throw std::invalid_argument("dissipation_rate: need at least 3 snapshots");
  const double dt = run[1].first - run[0].first;
  for (std::size_t i = 1; i < run.size(); ++i) {
    const double step = run[i].first - run[i - 1].first;
    if (!(step > 0.0) || std::abs(step - dt) > 1e-9 * std::abs(dt))
      throw std::invalid_argument("dissipation_rate: nonuniform time spacing");
  }

  std::vector<DissipationSeries> out;
  out.reserve(eps_list.size());
  for (double eps : eps_list) {
    std::vector<double> ih(run.size());
    for (std::size_t i = 0; i < run.size(); ++i) {
      ScalarField oe = filter(run[i].second, m, eps);
      for (double& v : oe.values) v = h.h(v);
      ih[i] = integral(oe);
    }
    DissipationSeries series;
    series.eps = eps;
    for (std::size_t i = 1; i + 1 < run.size(); ++i) {
      series.times.push_back(run[i].first);
      series.rate.push_back(-(ih[i + 1] - ih[i - 1]) / (2.0 * dt));
    }
    out.push_back(std::move(series));
  }
  return out;
}

FluxCurve flux_curve(const ScalarField& omega, const HFunction& h,
                     const Mollifier& m, const std::vector<double>& eps_list) {
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] > eps_list[i - 1]))
      throw std::invalid_argument("flux_curve: eps values must increase");
  FluxCurve curve;
  curve.method_tag = "defect:" + h.name;
  for (double eps : eps_list) {
    ScalarField z = defect_field(omega, h, m, eps);
    curve.eps_values.push_back(eps);
    curve.flux_integral.push_back(integral(z));
    curve.flux_abs_integral.push_back(abs_integral(z));
  }
  return curve;
}

SlopeFit fit_loglog_slope(const std::vector<double>& eps,
                          const std::vector<double>& vals, double eps_lo,
                          double eps_hi) {
  if (eps.size() != vals.size())
    throw std::invalid_argument("fit_loglog_slope: length mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] < eps_lo * (1.0 - 1e-12) || eps[i] > eps_hi * (1.0 + 1e-12))
      continue;
    if (!(vals[i] > 0.0))
      throw std::invalid_argument("fit_loglog_slope: nonpositive value");
    lx.push_back(std::log(eps[i]));
    ly.push_back(std::log(vals[i]));
  }
  const std::size_t count = lx.size();
  if (count < 2)
    throw std::invalid_argument("fit_loglog_slope: fewer than 2 points in window");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.eps_lo = eps_lo;
  fit.eps_hi = eps_hi;
  if (count > 2) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
      ss_res += r * r;
    }
    fit.stderr_slope = std::sqrt(ss_res / (count - 2) / sxx);
  }
  return fit;
}

}  // namespace cascade
