#include "cascade/mollifier.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

#include "cascade/fft.hpp"
#include "cascade/operators.hpp"

namespace cascade {
namespace {

double bump_shape(double z) {  // unnormalized profile on [0, 1)
  if (z >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - z * z));
}

double bump_shape_derivative(double z) {
  if (z >= 1.0) return 0.0;
  const double d = 1.0 - z * z;
  return bump_shape(z) * (-2.0 * z / (d * d));
}

}  // namespace

Mollifier Mollifier::bump(double support_radius) {
  if (!(support_radius > 0.0) || support_radius > M_PI / 4.0)
    throw std::invalid_argument("Mollifier::bump: support radius out of range");
  using boost::math::quadrature::gauss_kronrod;
  // unit integral over R^2: A * R^2 * 2 pi * int_0^1 shape(z) z dz = 1
  const double shape_moment1 = gauss_kronrod<double, 15>::integrate(
      [](double z) { return bump_shape(z) * z; }, 0.0, 1.0, 12, 1e-14);
  Mollifier m;
  m.radius_ = support_radius;
  m.amplitude_ =
      1.0 / (2.0 * M_PI * support_radius * support_radius * shape_moment1);
  // |phi'| integrals in R^2, via the scaled shape
  const double grad_moment = gauss_kronrod<double, 15>::integrate(
      [](double z) { return std::abs(bump_shape_derivative(z)) * z; }, 0.0, 1.0,
      12, 1e-14);
  m.grad_l1_ = m.amplitude_ * 2.0 * M_PI * support_radius * grad_moment;
  const double shape_moment2 = gauss_kronrod<double, 15>::integrate(
      [](double z) { return bump_shape(z) * z * z; }, 0.0, 1.0, 12, 1e-14);
  m.first_moment_ = m.amplitude_ * 2.0 * M_PI * support_radius * support_radius *
                    support_radius * shape_moment2;
  return m;
}

double Mollifier::profile(double r) const {
  return amplitude_ * bump_shape(std::abs(r) / radius_);
}

double Mollifier::profile_derivative(double r) const {
  return amplitude_ * bump_shape_derivative(std::abs(r) / radius_) / radius_;
}

std::shared_ptr<const std::vector<double>> Mollifier::multiplier(
    const Grid& grid, double eps) const {
  const double reach = eps * radius_;
  if (!(reach >= 2.0 * grid.dx) || reach > M_PI)
    throw std::invalid_argument("Mollifier: eps outside resolvable range");

  const auto key = std::make_pair(grid.n, eps);
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->entries.find(key);
    if (it != cache_->entries.end()) return it->second;
  }

  // Sample phi_eps on the grid (min-image distance to the origin), normalize
  // the lattice sum exactly, then transform. The multiplier is real because
  // the sampled kernel is even.
  ScalarField kernel(grid);
  double sum = 0.0;
  for (int iy = 0; iy < grid.n; ++iy)
    for (int ix = 0; ix < grid.n; ++ix) {
      double px = grid.x(ix);
      double py = grid.y(iy);
      if (px > M_PI) px -= kDomainLength;
      if (py > M_PI) py -= kDomainLength;
      const double r = std::hypot(px, py) / eps;
      const double v = (r < radius_) ? profile(r) / (eps * eps) : 0.0;
      kernel.at(ix, iy) = v;
      sum += v;
    }
  if (sum <= 0.0)
    throw std::invalid_argument("Mollifier: kernel unresolved on this grid");
  for (double& v : kernel.values) v /= sum;

  SpectralScalar K = fft_forward(kernel);
  auto mult = std::make_shared<std::vector<double>>(grid.size());
  const double inv0 = 1.0 / K.coefficients[0].real();
  for (std::size_t i = 0; i < K.coefficients.size(); ++i)
    (*mult)[i] = K.coefficients[i].real() * inv0;

  std::unique_lock lock(cache_->mutex);
  auto [it, inserted] = cache_->entries.emplace(key, std::move(mult));
  return it->second;
}

void Mollifier::dump_profile_csv(std::ostream& os, int samples) const {
  os << "r,phi\n";
  for (int i = 0; i <= samples; ++i) {
    const double r = radius_ * i / samples;
    os << r << "," << profile(r) << "\n";
  }
}

ScalarField filter(const ScalarField& f, const Mollifier& m, double eps) {
  auto mult = m.multiplier(f.grid, eps);
  SpectralScalar F = fft_forward(f);
  for (std::size_t i = 0; i < F.coefficients.size(); ++i)
    F.coefficients[i] *= (*mult)[i];
  ScalarField out = fft_inverse(F);
  out.time_tag = f.time_tag;
  return out;
}

VectorField filter(const VectorField& v, const Mollifier& m, double eps) {
  VectorField out(v.grid);
  out.x_component = filter(v.x_component, m, eps);
  out.y_component = filter(v.y_component, m, eps);
  return out;
}

ScalarField commutator_tau(const ScalarField& f, const ScalarField& g,
                           const Mollifier& m, double eps) {
  if (f.grid != g.grid)
    throw std::invalid_argument("commutator_tau: grid mismatch");
  ScalarField fg_eps = filter(dealiased_product(f, g), m, eps);
  ScalarField cross =
      dealiased_product(filter(f, m, eps), filter(g, m, eps));
  for (std::size_t i = 0; i < fg_eps.values.size(); ++i)
    fg_eps.values[i] -= cross.values[i];
  return fg_eps;
}

VectorField commutator_tau(const VectorField& u, const ScalarField& omega,
                           const Mollifier& m, double eps) {
  VectorField out(u.grid);
  out.x_component = commutator_tau(u.x_component, omega, m, eps);
  out.y_component = commutator_tau(u.y_component, omega, m, eps);
  return out;
}

VectorField subgrid_stress(const VectorField& u, const ScalarField& omega,
                           const Mollifier& m, double eps) {
  if (u.grid != omega.grid)
    throw std::invalid_argument("subgrid_stress: grid mismatch");
  return commutator_tau(u, omega, m, eps);
}

ScalarField increment(const ScalarField& f, double ell_x, double ell_y) {
  ScalarField shifted = spectral_shift(f, ell_x, ell_y);
  for (std::size_t i = 0; i < shifted.values.size(); ++i)
    shifted.values[i] -= f.values[i];
  return shifted;
}

}  // namespace cascade
