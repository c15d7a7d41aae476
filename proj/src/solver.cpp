#include "cascade/solver.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "cascade/fft.hpp"
#include "cascade/operators.hpp"
#include "cascade/rng.hpp"

namespace cascade {
namespace {

using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

// Spectral workspace for one grid/config; state is the mean-normalized
// vorticity spectrum.
struct Stepper {
  const Grid grid;
  const SolverConfig& cfg;
  std::vector<double> kx_d, ky_d;  // derivative waves (Nyquist zeroed)
  std::vector<double> k2;          // full |k|^2
  std::vector<double> linear;      // -nu k^2 - alpha 1_{|k| <= kmax}
  std::vector<double> e_half, e_full;  // exp(linear dt/2), exp(linear dt)
  double cached_sub_dt = -1.0;

  Stepper(const Grid& g, const SolverConfig& c) : grid(g), cfg(c) {
    const std::size_t sz = g.size();
    kx_d.resize(sz);
    ky_d.resize(sz);
    k2.resize(sz);
    linear.resize(sz);
    for (int iy = 0; iy < g.n; ++iy)
      for (int ix = 0; ix < g.n; ++ix) {
        const std::size_t i = g.index(ix, iy);
        const int kx = g.wave(ix);
        const int ky = g.wave(iy);
        kx_d[i] = kx == g.n / 2 ? 0.0 : kx;
        ky_d[i] = ky == g.n / 2 ? 0.0 : ky;
        k2[i] = double(kx) * kx + double(ky) * ky;
        linear[i] = -c.nu * k2[i];
        if (std::hypot(double(kx), double(ky)) <= c.hypofriction_kmax)
          linear[i] -= c.hypofriction_alpha;
      }
  }

  void set_sub_dt(double sub) {
    if (sub == cached_sub_dt) return;
    cached_sub_dt = sub;
    e_half.resize(linear.size());
    e_full.resize(linear.size());
    for (std::size_t i = 0; i < linear.size(); ++i) {
      e_half[i] = std::exp(0.5 * sub * linear[i]);
      e_full[i] = e_half[i] * e_half[i];
    }
  }

  VectorField velocity(const SpectralScalar& w) const {
    SpectralScalar Ux(grid), Uy(grid);
    for (std::size_t i = 0; i < k2.size(); ++i) {
      if (k2[i] == 0.0) continue;
      const complexd psi = w.coefficients[i] / k2[i];
      Ux.coefficients[i] = kI * ky_d[i] * psi;
      Uy.coefficients[i] = -kI * kx_d[i] * psi;
    }
    VectorField u(grid);
    u.x_component = fft_inverse(Ux);
    u.y_component = fft_inverse(Uy);
    return u;
  }

  double max_speed(const SpectralScalar& w) const {
    VectorField u = velocity(w);
    double m = 0.0;
    for (std::size_t i = 0; i < u.x_component.values.size(); ++i)
      m = std::max(m, std::hypot(u.x_component.values[i],
                                 u.y_component.values[i]));
    return m;
  }

  // -u . grad omega, spectral, optionally 2/3-dealiased.
  SpectralScalar nonlinear(const SpectralScalar& w) const {
    VectorField u = velocity(w);
    SpectralScalar Gx(grid), Gy(grid);
    for (std::size_t i = 0; i < k2.size(); ++i) {
      Gx.coefficients[i] = kI * kx_d[i] * w.coefficients[i];
      Gy.coefficients[i] = kI * ky_d[i] * w.coefficients[i];
    }
    ScalarField gx = fft_inverse(Gx);
    ScalarField gy = fft_inverse(Gy);
    ScalarField adv(grid);
    for (std::size_t i = 0; i < adv.values.size(); ++i)
      adv.values[i] = -(u.x_component.values[i] * gx.values[i] +
                        u.y_component.values[i] * gy.values[i]);
    SpectralScalar N = fft_forward(adv);
    if (cfg.dealias) dealias_spectrum(N);
    N.coefficients[0] = 0.0;
    return N;
  }

  // Classical RK4 with integrating factor on the linear part.
  SpectralScalar ifrk4(const SpectralScalar& w, double sub) {
    set_sub_dt(sub);
    const std::size_t sz = w.coefficients.size();
    SpectralScalar a = nonlinear(w);

    SpectralScalar stage(grid);
    for (std::size_t i = 0; i < sz; ++i)
      stage.coefficients[i] =
          e_half[i] * (w.coefficients[i] + 0.5 * sub * a.coefficients[i]);
    SpectralScalar b = nonlinear(stage);

    for (std::size_t i = 0; i < sz; ++i)
      stage.coefficients[i] = e_half[i] * w.coefficients[i] +
                              0.5 * sub * b.coefficients[i];
    SpectralScalar c = nonlinear(stage);

    for (std::size_t i = 0; i < sz; ++i)
      stage.coefficients[i] =
          e_full[i] * w.coefficients[i] + sub * e_half[i] * c.coefficients[i];
    SpectralScalar d = nonlinear(stage);

    SpectralScalar out(grid);
    for (std::size_t i = 0; i < sz; ++i)
      out.coefficients[i] =
          e_full[i] * w.coefficients[i] +
          sub / 6.0 *
              (e_full[i] * a.coefficients[i] +
               2.0 * e_half[i] * (b.coefficients[i] + c.coefficients[i]) +
               d.coefficients[i]);
    out.coefficients[0] = 0.0;
    return out;
  }

  bool finite(const SpectralScalar& w) const {
    for (const complexd& c : w.coefficients)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
  }

  // Advance by dt_total under the CFL guard, halving the substep (up to 10
  // times) when 0.5 dx / ||u||_inf is exceeded.
  void advance(SpectralScalar& w, double dt_total) {
    for (int halvings = 0;; ++halvings) {
      if (halvings > 10)
        throw std::runtime_error("solver: CFL violation after 10 halvings");
      const int nsub = 1 << halvings;
      const double sub = dt_total / nsub;
      SpectralScalar trial = w;
      bool ok = true;
      for (int i = 0; i < nsub; ++i) {
        const double umax = max_speed(trial);
        if (umax > 0.0 && sub > 0.5 * grid.dx / umax) {
          ok = false;
          break;
        }
        trial = ifrk4(trial, sub);
        if (!finite(trial)) throw std::runtime_error("solver: NaN in state");
      }
      if (ok) {
        w = std::move(trial);
        return;
      }
    }
  }

  // Spectral energies in the mean-normalized convention:
  // ||f||_2^2 = 4 pi^2 sum |f_hat|^2.
  AuditRow audit(const SpectralScalar& w, double t) const {
    double e = 0.0, om = 0.0, p = 0.0;
    for (std::size_t i = 0; i < k2.size(); ++i) {
      const double a2 = std::norm(w.coefficients[i]);
      om += a2;
      if (k2[i] > 0.0) e += a2 / k2[i];
      p += (kx_d[i] * kx_d[i] + ky_d[i] * ky_d[i]) * a2;
    }
    const double four_pi2 = 4.0 * M_PI * M_PI;
    return {t, 0.5 * four_pi2 * e, 0.5 * four_pi2 * om, 0.5 * four_pi2 * p,
            cfg.nu * four_pi2 * p, 0.0};
  }

  double energy(const SpectralScalar& w) const { return audit(w, 0).energy; }

  // Hermitian band-limited white-noise kick, counter-based per step.
  double kick(SpectralScalar& w, double dt, std::uint64_t step_index) const {
    const ForcingSpec& f = cfg.forcing;
    if (f.amplitude <= 0.0) return 0.0;
    const double e_before = energy(w);
    const double scale = f.amplitude * std::sqrt(dt);
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix) {
        const int kx = grid.wave(ix);
        const int ky = grid.wave(iy);
        if (!(ky > 0 || (ky == 0 && kx > 0))) continue;  // canonical half
        if (std::abs(kx) >= grid.n / 2 || std::abs(ky) >= grid.n / 2) continue;
        const double km = std::hypot(double(kx), double(ky));
        if (km < f.k_lo || km > f.k_hi) continue;
        const std::size_t i = grid.index(ix, iy);
        const double u1 = counter_uniform(f.seed, step_index, 2 * i);
        const double u2 = counter_uniform(f.seed, step_index, 2 * i + 1);
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        const complexd xi =
            r * std::polar(1.0, 2.0 * M_PI * u2) / std::sqrt(2.0);
        w.coefficients[i] += scale * xi;
        const int jx = (grid.n - ix) % grid.n;
        const int jy = (grid.n - iy) % grid.n;
        w.coefficients[grid.index(jx, jy)] += scale * std::conj(xi);
      }
    return energy(w) - e_before;
  }
};

}  // namespace

void SolverConfig::validate() const {
  Grid check(grid_n);  // throws on bad n
  (void)check;
  if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be > 0");
  if (nu < 0.0) throw std::invalid_argument("SolverConfig: nu must be >= 0");
  if (t_end < 0.0)
    throw std::invalid_argument("SolverConfig: t_end must be >= 0");
  if (hypofriction_alpha < 0.0 || hypofriction_kmax < 0)
    throw std::invalid_argument("SolverConfig: bad hypofriction parameters");
}

ScalarField step(const ScalarField& omega, const SolverConfig& config) {
  config.validate();
  if (omega.grid.n != config.grid_n)
    throw std::invalid_argument("step: grid does not match config");
  Stepper st(omega.grid, config);
  SpectralScalar w = fft_forward(omega);
  w.coefficients[0] = 0.0;
  st.advance(w, config.dt);
  ScalarField out = fft_inverse(w);
  out.time_tag = omega.time_tag.value_or(0.0) + config.dt;
  return out;
}

RunRecord run(const SolverConfig& config, const ScalarField& omega0) {
  config.validate();
  if (omega0.grid.n != config.grid_n)
    throw std::invalid_argument("run: grid does not match config");

  Stepper st(omega0.grid, config);
  SpectralScalar w = fft_forward(omega0);
  w.coefficients[0] = 0.0;

  RunRecord rec;
  rec.config = config;

  auto snapshot = [&](double t) {
    ScalarField f = fft_inverse(w);
    f.time_tag = t;
    rec.snapshots.emplace_back(t, std::move(f));
  };
  auto check_resolution = [&](const AuditRow& row) {
    if (config.nu <= 0.0) return;
    const double eta = row.dissipation;  // enstrophy dissipation rate
    if (eta <= 0.0) return;
    const double k_d = std::pow(eta, 1.0 / 6.0) / std::sqrt(config.nu);
    if (k_d > config.grid_n / 3.0) rec.resolution_warning = true;
  };

  double t = 0.0;
  rec.audit.push_back(st.audit(w, t));
  check_resolution(rec.audit.back());
  snapshot(t);
  double next_snapshot = config.snapshot_interval > 0.0
                             ? config.snapshot_interval
                             : config.t_end;

  std::uint64_t step_index = 0;
  while (t < config.t_end - 1e-12) {
    const double dt_step = std::min(config.dt, config.t_end - t);
    st.advance(w, dt_step);
    const double input = st.kick(w, dt_step, step_index++);
    t += dt_step;
    AuditRow row = st.audit(w, t);
    row.forcing_input = input;
    rec.audit.push_back(row);
    check_resolution(row);
    if (t >= next_snapshot - 1e-12 || t >= config.t_end - 1e-12) {
      snapshot(t);
      if (config.snapshot_interval > 0.0) {
        while (next_snapshot <= t + 1e-12)
          next_snapshot += config.snapshot_interval;
      } else {
        next_snapshot = std::numeric_limits<double>::infinity();
      }
    }
  }
  if (rec.snapshots.back().first < config.t_end - 1e-12) snapshot(t);
  return rec;
}

std::vector<NuSweepRow> nu_sweep(const SolverConfig& base,
                                 const ScalarField& omega0,
                                 const std::vector<double>& nu_list,
                                 const HFunction& h, const Mollifier& m,
                                 const std::vector<double>& eps_list) {
  for (std::size_t i = 1; i < nu_list.size(); ++i)
    if (!(nu_list[i] < nu_list[i - 1]))
      throw std::invalid_argument("nu_sweep: nu_list must be decreasing");

  std::vector<NuSweepRow> rows;
  for (double nu : nu_list) {
    SolverConfig cfg = base;
    cfg.nu = nu;
    RunRecord rec = run(cfg, omega0);

    // time-averaged int nu h''(omega) |grad omega|^2 over the snapshots
    double avg = 0.0;
    if (nu > 0.0) {
      double acc = 0.0, span = 0.0;
      for (std::size_t i = 1; i < rec.snapshots.size(); ++i) {
        const auto& [t0, f0] = rec.snapshots[i - 1];
        const auto& [t1, f1] = rec.snapshots[i];
        auto total = [&](const ScalarField& f) {
          ScalarField d = viscous_dissipation(f, h, nu);
          double s = 0.0;
          for (double v : d.values) s += v;
          return s * f.grid.dx * f.grid.dx;
        };
        acc += 0.5 * (total(f0) + total(f1)) * (t1 - t0);
        span += t1 - t0;
      }
      avg = span > 0.0 ? acc / span : 0.0;
    }

    FluxCurve curve = flux_curve(rec.snapshots.back().second, h, m, eps_list);
    rows.push_back({nu, avg, std::move(curve)});
  }
  return rows;
}

}  // namespace cascade
