// cascade: batch front end for field generation, simulation, sweeps, and
// spectral diagnostics. Exit codes: 0 success, 2 malformed config or missing
// file, 3 numerical failure, 4 verification failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cascade/fft.hpp"
#include "cascade/flux.hpp"
#include "cascade/io.hpp"
#include "cascade/lp.hpp"
#include "cascade/mollifier.hpp"
#include "cascade/operators.hpp"
#include "cascade/rng.hpp"
#include "cascade/solver.hpp"
#include "cascade/synth.hpp"
#include "cascade/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cascade;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw ConfigError("empty list: " + text);
  return out;
}

HFunction h_by_name(const std::string& name) {
  if (name == "enstrophy") return HFunction::enstrophy();
  if (name == "one_minus_cos") return HFunction::one_minus_cos();
  if (name.rfind("moment", 0) == 0)
    return HFunction::p_moment(std::stod(name.substr(6)));
  throw ConfigError("unknown h function: " + name +
                    " (want enstrophy, one_minus_cos, momentP)");
}

std::vector<double> default_eps_list(const Grid& g, double support_radius,
                                     int points = 7) {
  // log-spaced scale parameters over [8 dx, 64 dx], clipped to the
  // resolvable range 2 dx <= eps R <= pi
  const double lo = std::max(8.0 * g.dx, 2.0 * g.dx / support_radius);
  const double hi = std::min(64.0 * g.dx, M_PI / support_radius * 0.999);
  std::vector<double> out;
  for (int i = 0; i < points; ++i)
    out.push_back(lo * std::pow(hi / lo, double(i) / (points - 1)));
  return out;
}

void write_flux_csv(const fs::path& path, const FluxCurve& curve) {
  std::ostringstream os;
  os << "eps,flux_integral,flux_abs_integral,method\n";
  os.precision(17);
  for (std::size_t i = 0; i < curve.eps_values.size(); ++i)
    os << curve.eps_values[i] << ',' << curve.flux_integral[i] << ','
       << curve.flux_abs_integral[i] << ',' << curve.method_tag << '\n';
  write_text_atomic(path, os.str());
}

json flux_json(const FluxCurve& curve) {
  return {{"eps", curve.eps_values},
          {"flux_integral", curve.flux_integral},
          {"flux_abs_integral", curve.flux_abs_integral},
          {"method", curve.method_tag}};
}

json fit_json(const SlopeFit& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"stderr_slope", fit.stderr_slope},
          {"eps_lo", fit.eps_lo},
          {"eps_hi", fit.eps_hi}};
}

// ---------------------------------------------------------------- gen

int cmd_gen(const Config& cfg, const fs::path& out) {
  Grid grid(cfg.get("n", 256));
  GenSpec spec;
  spec.kind = gen_kind_from_string(cfg.get("kind", std::string("single_mode")));
  spec.mode_kx = cfg.get("mode_kx", 1);
  spec.mode_ky = cfg.get("mode_ky", 0);
  spec.patch_radius = cfg.get("patch_radius", 1.0);
  spec.patch_smoothing = cfg.get("patch_smoothing", 0.0);
  spec.s = cfg.get("s", 0.0);
  spec.shell_mass = cfg.get("shell_mass", 1.0);
  spec.spectrum_c = cfg.get("spectrum_c", 1.0);
  spec.k0 = cfg.get("k0", 1);
  spec.log_correction = cfg.get("log_correction", false);
  spec.seed = static_cast<std::uint64_t>(cfg.get("seed", 0));

  ScalarField f = generate(spec, grid);
  write_snapshot(out, f);
  std::cout << "wrote " << out.string() << " kind=" << to_string(spec.kind)
            << " n=" << grid.n << " l2=" << lp_norm(f, 2.0) << "\n";
  return 0;
}

// ---------------------------------------------------------------- simulate

SolverConfig solver_config_from(const Config& cfg) {
  SolverConfig sc;
  sc.grid_n = cfg.get("n", sc.grid_n);
  sc.nu = cfg.get("nu", sc.nu);
  sc.dt = cfg.get("dt", sc.dt);
  sc.t_end = cfg.get("t_end", sc.t_end);
  sc.dealias = cfg.get("dealias", sc.dealias);
  sc.hypofriction_alpha = cfg.get("hypofriction_alpha", sc.hypofriction_alpha);
  sc.hypofriction_kmax = cfg.get("hypofriction_kmax", sc.hypofriction_kmax);
  sc.snapshot_interval = cfg.get("snapshot_interval", sc.snapshot_interval);
  sc.forcing.k_lo = cfg.get("forcing_k_lo", sc.forcing.k_lo);
  sc.forcing.k_hi = cfg.get("forcing_k_hi", sc.forcing.k_hi);
  sc.forcing.amplitude = cfg.get("forcing_amplitude", sc.forcing.amplitude);
  sc.forcing.seed =
      static_cast<std::uint64_t>(cfg.get("forcing_seed", 0));
  sc.validate();
  return sc;
}

json solver_config_json(const SolverConfig& sc) {
  return {{"n", sc.grid_n},
          {"nu", sc.nu},
          {"dt", sc.dt},
          {"t_end", sc.t_end},
          {"dealias", sc.dealias},
          {"hypofriction_alpha", sc.hypofriction_alpha},
          {"hypofriction_kmax", sc.hypofriction_kmax},
          {"snapshot_interval", sc.snapshot_interval},
          {"forcing_k_lo", sc.forcing.k_lo},
          {"forcing_k_hi", sc.forcing.k_hi},
          {"forcing_amplitude", sc.forcing.amplitude},
          {"forcing_seed", sc.forcing.seed}};
}

void write_audit_csv(const fs::path& path, const RunRecord& rec) {
  std::ostringstream os;
  os << "t,energy,enstrophy,palinstrophy,dissipation,forcing_input\n";
  os.precision(17);
  for (const AuditRow& r : rec.audit)
    os << r.t << ',' << r.energy << ',' << r.enstrophy << ','
       << r.palinstrophy << ',' << r.dissipation << ',' << r.forcing_input
       << '\n';
  write_text_atomic(path, os.str());
}

int cmd_simulate(const SolverConfig& sc, const fs::path& init,
                 const fs::path& out_dir) {
  ScalarField omega0 = read_scalar_snapshot(init);
  fs::create_directories(out_dir);
  RunRecord rec = run(sc, omega0);

  json snaps = json::array();
  for (std::size_t i = 0; i < rec.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "snapshot_%04zu.snap", i);
    write_snapshot(out_dir / name, rec.snapshots[i].second,
                   {rec.snapshots[i].first, sc.nu});
    snaps.push_back({{"file", name}, {"time", rec.snapshots[i].first}});
  }
  write_audit_csv(out_dir / "audit.csv", rec);

  json report = {{"version", kVersion},
                 {"config", solver_config_json(sc)},
                 {"snapshots", snaps},
                 {"resolution_warning", rec.resolution_warning}};
  write_text_atomic(out_dir / "run.json", report.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- flux-sweep

int cmd_flux_sweep(const fs::path& snapshot, const std::string& h_name,
                   double radius, std::vector<double> eps_list,
                   const fs::path& out_dir) {
  ScalarField omega = read_scalar_snapshot(snapshot);
  HFunction h = h_by_name(h_name);
  Mollifier m = Mollifier::bump(radius);
  if (eps_list.empty()) eps_list = default_eps_list(omega.grid, radius);
  std::sort(eps_list.begin(), eps_list.end());

  fs::create_directories(out_dir);
  FluxCurve curve = flux_curve(omega, h, m, eps_list);
  write_flux_csv(out_dir / "flux.csv", curve);

  const double fit_lo = 8.0 * omega.grid.dx;
  const double fit_hi = std::min(64.0 * omega.grid.dx, M_PI / (2.0 * radius));
  json report = {{"version", kVersion},
                 {"snapshot", snapshot.string()},
                 {"h", h_name},
                 {"mollifier",
                  {{"support_radius", radius},
                   {"effective_radius_list",
                    [&] {
                      std::vector<double> v;
                      for (double e : eps_list) v.push_back(e * radius);
                      return v;
                    }()}}},
                 {"curve", flux_json(curve)}};
  try {
    SlopeFit fit = fit_loglog_slope(curve.eps_values, curve.flux_abs_integral,
                                    fit_lo, fit_hi);
    report["fit_abs"] = fit_json(fit);
  } catch (const std::exception& e) {
    report["fit_abs"] = {{"error", e.what()}};
  }
  write_text_atomic(out_dir / "flux.json", report.dump(2) + "\n");
  std::cout << report["fit_abs"].dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------- nu-sweep

int cmd_nu_sweep(const SolverConfig& base, const fs::path& init,
                 const std::vector<double>& nu_list, const std::string& h_name,
                 double radius, std::vector<double> eps_list,
                 const fs::path& out, unsigned jobs) {
  ScalarField omega0 = read_scalar_snapshot(init);
  HFunction h = h_by_name(h_name);
  Mollifier m = Mollifier::bump(radius);
  if (eps_list.empty()) eps_list = default_eps_list(omega0.grid, radius);
  std::sort(eps_list.begin(), eps_list.end());

  // fan the nu entries across a bounded pool; results keep list order
  std::vector<NuSweepRow> rows(nu_list.size());
  std::vector<std::future<void>> tasks;
  std::size_t next = 0;
  std::mutex mx;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(mx);
        if (next >= nu_list.size()) return;
        i = next++;
      }
      auto row = nu_sweep(base, omega0, {nu_list[i]}, h, m, eps_list);
      rows[i] = std::move(row.front());
    }
  };
  const unsigned pool = std::max(1u, std::min<unsigned>(jobs, nu_list.size()));
  for (unsigned t = 0; t < pool; ++t)
    tasks.push_back(std::async(std::launch::async, worker));
  for (auto& t : tasks) t.get();

  json table = json::array();
  for (const NuSweepRow& r : rows)
    table.push_back({{"nu", r.nu},
                     {"mean_viscous_dissipation", r.mean_dissipation},
                     {"flux_curve", flux_json(r.flux)}});
  json report = {{"version", kVersion},
                 {"config", solver_config_json(base)},
                 {"init", init.string()},
                 {"h", h_name},
                 {"mollifier_support_radius", radius},
                 {"eps", eps_list},
                 {"rows", table}};
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_text_atomic(out, report.dump(2) + "\n");
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------- lp-analyze

void write_spectrum_csv(const fs::path& path,
                        const std::vector<SpectrumBand>& e,
                        const std::vector<SpectrumBand>& o) {
  std::ostringstream os;
  os << "N,k_band_lo,k_band_hi,E_LP,Omega_LP\n";
  os.precision(17);
  for (std::size_t i = 0; i < e.size(); ++i)
    os << e[i].shell << ',' << e[i].k_lo << ',' << e[i].k_hi << ','
       << e[i].value << ',' << o[i].value << '\n';
  write_text_atomic(path, os.str());
}

int cmd_lp_analyze(const fs::path& input, int k0, std::optional<double> eta,
                   const fs::path& out_dir) {
  // input: a scalar snapshot, or a simulate output directory
  std::vector<std::pair<double, ScalarField>> snaps;
  double nu = 0.0;
  if (fs::is_directory(input)) {
    std::vector<fs::path> files;
    for (const auto& ent : fs::directory_iterator(input))
      if (ent.path().extension() == ".snap") files.push_back(ent.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ConfigError("no .snap files in " + input.string());
    for (const auto& p : files) {
      SnapshotMeta meta;
      ScalarField f = read_scalar_snapshot(p, &meta);
      nu = meta.viscosity;
      snaps.emplace_back(meta.time, std::move(f));
    }
  } else {
    SnapshotMeta meta;
    ScalarField f = read_scalar_snapshot(input, &meta);
    nu = meta.viscosity;
    snaps.emplace_back(meta.time, std::move(f));
  }

  const Grid grid = snaps.front().second.grid;
  LPPartition part(grid);

  // eta: supplied, else measured mean nu ||grad omega||^2 over the run
  std::string eta_source = "user";
  double eta_val;
  if (eta) {
    eta_val = *eta;
  } else {
    eta_source = "measured";
    double acc = 0.0;
    for (const auto& [t, f] : snaps) {
      const double g = lp_norm(gradient(f), 2.0);
      acc += nu * g * g;
    }
    eta_val = acc / snaps.size();
    if (eta_val <= 0.0)
      throw ConfigError("eta not measurable (nu = 0 run?); pass --eta");
  }

  std::vector<std::pair<double, VectorField>> urun;
  for (const auto& [t, f] : snaps) urun.emplace_back(t, biot_savart(f));

  fs::create_directories(out_dir);
  const auto& last = urun.back().second;
  write_spectrum_csv(out_dir / "spectrum.csv", lp_energy_spectrum(last, part),
                     lp_enstrophy_spectrum(snaps.back().second, part));

  HypothesisReport rep = hypothesis_diagnostics(urun, part, k0, eta_val, nu);
  BesovNorm b0 = besov_norm(snaps.back().second, 0.0, 2.0, part);
  json report = {{"version", kVersion},
                 {"input", input.string()},
                 {"k0", k0},
                 {"eta", eta_val},
                 {"eta_source", eta_source},
                 {"nu", nu},
                 {"gamma", rep.gamma},
                 {"k_d", rep.k_d},
                 {"times", rep.times},
                 {"c_energy", rep.c_energy},
                 {"c_enstrophy", rep.c_enstrophy},
                 {"mean_c_energy", rep.mean_c_energy},
                 {"mean_c_enstrophy", rep.mean_c_enstrophy},
                 {"besov_b0_2",
                  {{"value", b0.value},
                   {"argmax_shell", b0.argmax_shell},
                   {"truncated", b0.truncated}}}};
  json env = json::array();
  for (const auto& [k, v] : rep.envelope) env.push_back({{"k", k}, {"bound", v}});
  report["constantin_envelope"] = env;
  write_text_atomic(out_dir / "hypothesis.json", report.dump(2) + "\n");
  std::cout << "wrote " << (out_dir / "hypothesis.json").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------- verify

struct Tap {
  int count = 0;
  int failed = 0;
  void check(const std::string& name, bool ok, const std::string& detail = "") {
    ++count;
    if (!ok) ++failed;
    std::cout << (ok ? "ok " : "not ok ") << count << " - " << name;
    if (!ok && !detail.empty()) std::cout << " # " << detail;
    std::cout << "\n";
  }
};

ScalarField random_band_limited(const Grid& g, std::uint64_t seed,
                                int kmax = 0) {
  if (kmax == 0) kmax = g.n / 3;
  SpectralScalar F(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const int kx = g.wave(ix);
      const int ky = g.wave(iy);
      if (kx == 0 && ky == 0) continue;
      if (!(ky > 0 || (ky == 0 && kx > 0))) continue;
      if (std::abs(kx) > kmax || std::abs(ky) > kmax) continue;
      const std::size_t i = g.index(ix, iy);
      const double u1 = counter_uniform(seed, 7, 2 * i);
      const double u2 = counter_uniform(seed, 7, 2 * i + 1);
      const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
      const std::complex<double> c =
          r * std::polar(1.0, 2.0 * M_PI * u2) / double(kmax);
      F.at(ix, iy) = c;
      F.at((g.n - ix) % g.n, (g.n - iy) % g.n) = std::conj(c);
    }
  return fft_inverse(F);
}

int cmd_verify(const std::string& level) {
  const bool full = level == "full";
  if (!full && level != "quick") throw ConfigError("verify level: quick|full");
  Tap tap;
  const Grid g(128);
  Mollifier m = Mollifier::bump(M_PI / 4.0);

  {  // fft round-trip
    ScalarField f = random_band_limited(g, 11, g.n / 2 - 1);
    ScalarField f2 = fft_inverse(fft_forward(f));
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      err = std::max(err, std::abs(f.values[i] - f2.values[i]));
      ref = std::max(ref, std::abs(f.values[i]));
    }
    tap.check("fft round-trip", err <= 1e-12 * ref);
  }
  {  // biot-savart inversion
    ScalarField w = random_band_limited(g, 12);
    VectorField u = biot_savart(w);
    ScalarField w2 = curl2d(u);
    double err = 0.0;
    for (std::size_t i = 0; i < w.values.size(); ++i)
      err = std::max(err, std::abs(w.values[i] - w2.values[i]));
    tap.check("biot-savart curl round-trip",
              err <= 1e-10 * lp_norm(w, std::numeric_limits<double>::infinity()));
  }
  {  // gradtau decomposition
    ScalarField w = random_band_limited(g, 13);
    VectorField u = biot_savart(w);
    const double eps = 16.0 * g.dx / m.support_radius();
    VectorField tau = commutator_tau(u, w, m, eps);
    ScalarField lhs = divergence(tau);
    ScalarField we = filter(w, m, eps);
    VectorField uw(g);
    uw.x_component = dealiased_product(u.x_component, w);
    uw.y_component = dealiased_product(u.y_component, w);
    VectorField uwe(g);
    uwe.x_component = dealiased_product(u.x_component, we);
    uwe.y_component = dealiased_product(u.y_component, we);
    VectorField diff(g);
    ScalarField uwxe = filter(uw.x_component, m, eps);
    ScalarField uwye = filter(uw.y_component, m, eps);
    for (std::size_t i = 0; i < diff.x_component.values.size(); ++i) {
      diff.x_component.values[i] = uwxe.values[i] - uwe.x_component.values[i];
      diff.y_component.values[i] = uwye.values[i] - uwe.y_component.values[i];
    }
    ScalarField rhs = divergence(diff);
    VectorField gwe = gradient(we);
    ScalarField ue_x = filter(u.x_component, m, eps);
    ScalarField ue_y = filter(u.y_component, m, eps);
    // transport term dealiased like every other product in the identity
    ScalarField transport(g);
    for (std::size_t i = 0; i < transport.values.size(); ++i)
      transport.values[i] = (u.x_component.values[i] - ue_x.values[i]) *
                                gwe.x_component.values[i] +
                            (u.y_component.values[i] - ue_y.values[i]) *
                                gwe.y_component.values[i];
    transport = dealias(transport);
    for (std::size_t i = 0; i < rhs.values.size(); ++i)
      rhs.values[i] += transport.values[i];
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < rhs.values.size(); ++i) {
      err = std::max(err, std::abs(lhs.values[i] - rhs.values[i]));
      ref = std::max(ref, std::abs(lhs.values[i]));
    }
    tap.check("gradtau decomposition", err <= 1e-10 * ref);
  }
  {  // mollifier inequalities, a handful of fields
    bool ok1 = true, ok2 = true;
    const int fields = full ? 30 : 8;
    for (int i = 0; i < fields; ++i) {
      ScalarField w = random_band_limited(g, 100 + i);
      VectorField u = biot_savart(w);
      const double eps = (8.0 + 5.0 * i) * g.dx / m.support_radius();
      if (eps * m.support_radius() > M_PI) continue;
      VectorField ue = filter(u, m, eps);
      VectorField du(g);
      for (std::size_t j = 0; j < du.x_component.values.size(); ++j) {
        du.x_component.values[j] =
            u.x_component.values[j] - ue.x_component.values[j];
        du.y_component.values[j] =
            u.y_component.values[j] - ue.y_component.values[j];
      }
      VectorField gx = gradient(u.x_component);
      VectorField gy = gradient(u.y_component);
      const double gnorm = std::sqrt(lp_norm(gx, 2.0) * lp_norm(gx, 2.0) +
                                     lp_norm(gy, 2.0) * lp_norm(gy, 2.0));
      if (lp_norm(du, 2.0) > 1.1 * eps * gnorm) ok1 = false;
      ScalarField gwe_mag(g);
      VectorField gwe = gradient(filter(w, m, eps));
      if (lp_norm(gwe, 2.0) > 1.1 / eps * m.grad_l1() * lp_norm(w, 2.0))
        ok2 = false;
    }
    tap.check("ineq1 ||u - u_eps||_2 <= 1.1 eps ||grad u||_2", ok1);
    tap.check("ineq2 ||grad omega_eps||_2 <= 1.1 eps^-1 ||grad phi||_1 ||omega||_2",
              ok2);
  }
  {  // LP partition telescoping
    const Grid gl(full ? 256 : 128);
    LPPartition part(gl);
    double dev = 0.0;
    for (std::size_t i = 0; i < gl.size(); ++i) {
      double sum = 0.0;
      for (int N = 0; N <= part.n_shells(); ++N)
        sum += part.shell_multiplier(N)[i];
      dev = std::max(dev, std::abs(sum - 1.0));
    }
    tap.check("LP partition telescoping", dev <= 1e-12);
  }
  {  // alt-exp identity, exact quadrature
    ScalarField w = random_band_limited(g, 21);
    const double eps = 16.0 * g.dx / m.support_radius();
    ScalarField lhs4 = structure_flux(w, m, eps, StructureQuadrature::exact);
    ScalarField zt = defect_tilde(w, m, eps);
    VectorField u = biot_savart(w);
    ScalarField w2(g);
    for (std::size_t i = 0; i < w2.values.size(); ++i)
      w2.values[i] = w.values[i] * w.values[i];
    VectorField uw2(g);
    for (std::size_t i = 0; i < w2.values.size(); ++i) {
      uw2.x_component.values[i] = u.x_component.values[i] * w2.values[i];
      uw2.y_component.values[i] = u.y_component.values[i] * w2.values[i];
    }
    ScalarField termB = divergence(filter(uw2, m, eps));
    VectorField gw2e = gradient(filter(w2, m, eps));
    ScalarField rhs(g);
    for (std::size_t i = 0; i < rhs.values.size(); ++i) {
      const double termA = u.x_component.values[i] * gw2e.x_component.values[i] +
                           u.y_component.values[i] * gw2e.y_component.values[i];
      rhs.values[i] =
          0.25 * (termA - termB.values[i]) + zt.values[i];
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < rhs.values.size(); ++i) {
      num += (lhs4.values[i] - rhs.values[i]) * (lhs4.values[i] - rhs.values[i]);
      den += rhs.values[i] * rhs.values[i];
    }
    tap.check("alt-exp identity (exact quadrature)",
              std::sqrt(num / den) <= 1e-8);
  }
  {  // Taylor-Green decay
    GenSpec tg;
    tg.kind = GenSpec::Kind::taylor_green;
    ScalarField w = generate(tg, g);
    SolverConfig sc;
    sc.grid_n = g.n;
    sc.nu = 0.01;
    sc.dt = 1e-3;
    const int steps = full ? 100 : 20;
    for (int i = 0; i < steps; ++i) w = step(w, sc);
    double err = 0.0;
    const double decay = 2.0 * std::exp(-2.0 * sc.nu * steps * sc.dt);
    for (int iy = 0; iy < g.n; ++iy)
      for (int ix = 0; ix < g.n; ++ix)
        err = std::max(err, std::abs(w.at(ix, iy) -
                                     decay * std::cos(g.x(ix)) *
                                         std::cos(g.y(iy))));
    tap.check("Taylor-Green decay", err <= 1e-8 * decay);
  }

  std::cout << "1.." << tap.count << "\n";
  return tap.failed == 0 ? 0 : 4;
}

// ---------------------------------------------------------------- report

int cmd_report(const fs::path& dir) {
  json combined = {{"version", kVersion}, {"dir", dir.string()}};
  json docs = json::object();
  for (const auto& ent : fs::recursive_directory_iterator(dir)) {
    if (ent.path().extension() != ".json") continue;
    if (ent.path().filename() == "report.json") continue;
    std::ifstream is(ent.path());
    try {
      docs[fs::relative(ent.path(), dir).string()] = json::parse(is);
    } catch (const json::parse_error&) {
      docs[fs::relative(ent.path(), dir).string()] = {{"error", "unparseable"}};
    }
  }
  combined["documents"] = docs;
  write_text_atomic(dir / "report.json", combined.dump(2) + "\n");
  std::cout << "wrote " << (dir / "report.json").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D periodic vorticity solver and cascade diagnostics"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a vorticity snapshot");
  std::string gen_spec_file, gen_kind;
  std::string gen_out;
  int gen_n = 0, gen_seed = -1;
  double gen_s = std::nan(""), gen_mass = std::nan("");
  gen->add_option("--spec", gen_spec_file, "key=value spec file");
  gen->add_option("--kind", gen_kind, "generator kind");
  gen->add_option("--n", gen_n, "grid size");
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--s", gen_s, "Besov index");
  gen->add_option("--shell-mass", gen_mass, "shell L2 mass");
  gen->add_option("--out", gen_out, "output snapshot")->required();

  // simulate
  auto* sim = app.add_subcommand("simulate", "integrate a vorticity field");
  std::string sim_cfg_file, sim_init, sim_out;
  sim->add_option("--config", sim_cfg_file, "solver config file");
  sim->add_option("--init", sim_init, "initial snapshot")->required();
  sim->add_option("--out-dir", sim_out, "output directory")->required();
  double sim_nu = std::nan(""), sim_dt = std::nan(""), sim_tend = std::nan("");
  sim->add_option("--nu", sim_nu, "viscosity");
  sim->add_option("--dt", sim_dt, "time step");
  sim->add_option("--t-end", sim_tend, "end time");

  // flux-sweep
  auto* fsweep = app.add_subcommand("flux-sweep", "eps sweep of the defect field");
  std::string fs_snap, fs_h = "enstrophy", fs_eps, fs_out;
  double fs_radius = 0.3;
  fsweep->add_option("--snapshot", fs_snap)->required();
  fsweep->add_option("--hfun", fs_h, "h function");
  fsweep->add_option("--radius", fs_radius, "mollifier support radius");
  fsweep->add_option("--eps-list", fs_eps, "comma-separated eps values");
  fsweep->add_option("--out-dir", fs_out)->required();

  // nu-sweep
  auto* nsweep = app.add_subcommand("nu-sweep", "viscosity sweep probe");
  std::string ns_cfg_file, ns_init, ns_nu, ns_h = "enstrophy", ns_eps, ns_out;
  double ns_radius = 0.3;
  unsigned ns_jobs = std::thread::hardware_concurrency();
  nsweep->add_option("--config", ns_cfg_file);
  nsweep->add_option("--init", ns_init)->required();
  nsweep->add_option("--nu-list", ns_nu)->required();
  nsweep->add_option("--hfun", ns_h);
  nsweep->add_option("--radius", ns_radius);
  nsweep->add_option("--eps-list", ns_eps);
  nsweep->add_option("--jobs", ns_jobs, "worker pool size");
  nsweep->add_option("--out", ns_out)->required();

  // lp-analyze
  auto* lp = app.add_subcommand("lp-analyze", "spectra and uniform-bound probes");
  std::string lp_in, lp_out;
  int lp_k0 = 4;
  double lp_eta = std::nan("");
  lp->add_option("--input", lp_in, "snapshot or run directory")->required();
  lp->add_option("--k0", lp_k0);
  lp->add_option("--eta", lp_eta, "enstrophy dissipation rate");
  lp->add_option("--out-dir", lp_out)->required();

  // verify
  auto* ver = app.add_subcommand("verify", "identity and property suite");
  std::string ver_level = "quick";
  ver->add_option("--level", ver_level, "quick|full");

  // report
  auto* rep = app.add_subcommand("report", "aggregate JSON outputs");
  std::string rep_dir;
  rep->add_option("--dir", rep_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      Config cfg;
      if (!gen_spec_file.empty()) cfg = Config::parse_file(gen_spec_file);
      if (gen->count("--kind")) cfg.set("kind", gen_kind);
      if (gen->count("--n")) cfg.set("n", std::to_string(gen_n));
      if (gen->count("--seed")) cfg.set("seed", std::to_string(gen_seed));
      if (gen->count("--s")) cfg.set("s", std::to_string(gen_s));
      if (gen->count("--shell-mass"))
        cfg.set("shell_mass", std::to_string(gen_mass));
      return cmd_gen(cfg, gen_out);
    }
    if (sim->parsed()) {
      Config cfg;
      if (!sim_cfg_file.empty()) cfg = Config::parse_file(sim_cfg_file);
      if (sim->count("--nu")) cfg.set("nu", std::to_string(sim_nu));
      if (sim->count("--dt")) cfg.set("dt", std::to_string(sim_dt));
      if (sim->count("--t-end")) cfg.set("t_end", std::to_string(sim_tend));
      SolverConfig sc = solver_config_from(cfg);
      // default the grid to the initial snapshot
      if (!cfg.has("n")) {
        SnapshotMeta meta;
        sc.grid_n = read_scalar_snapshot(sim_init, &meta).grid.n;
      }
      return cmd_simulate(sc, sim_init, sim_out);
    }
    if (fsweep->parsed()) {
      std::vector<double> eps;
      if (!fs_eps.empty()) eps = parse_double_list(fs_eps);
      return cmd_flux_sweep(fs_snap, fs_h, fs_radius, eps, fs_out);
    }
    if (nsweep->parsed()) {
      Config cfg;
      if (!ns_cfg_file.empty()) cfg = Config::parse_file(ns_cfg_file);
      SolverConfig sc = solver_config_from(cfg);
      if (!cfg.has("n")) {
        SnapshotMeta meta;
        sc.grid_n = read_scalar_snapshot(ns_init, &meta).grid.n;
      }
      std::vector<double> eps;
      if (!ns_eps.empty()) eps = parse_double_list(ns_eps);
      return cmd_nu_sweep(sc, ns_init, parse_double_list(ns_nu), ns_h,
                          ns_radius, eps, ns_out, ns_jobs);
    }
    if (lp->parsed()) {
      std::optional<double> eta;
      if (lp->count("--eta")) eta = lp_eta;
      return cmd_lp_analyze(lp_in, lp_k0, eta, lp_out);
    }
    if (ver->parsed()) return cmd_verify(ver_level);
    if (rep->parsed()) return cmd_report(rep_dir);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    // file/parse problems are configuration errors; the rest are numerical
    if (what.find("config") != std::string::npos ||
        what.find("cannot open") != std::string::npos ||
        what.find("snapshot") != std::string::npos) {
      std::cerr << "error: " << what << "\n";
      return 2;
    }
    std::cerr << "numerical failure: " << what << "\n";
    return 3;
  }
  return 0;
}
