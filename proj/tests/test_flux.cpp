#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "cascade/flux.hpp"
#include "cascade/hfunction.hpp"
#include "cascade/operators.hpp"
#include "cascade/synth.hpp"

#include "test_util.hpp"

using namespace cascade;
using testutil::max_abs;
using testutil::max_abs_diff;
using testutil::random_field;

namespace {

double integral(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s * f.grid.dx * f.grid.dx;
}

ScalarField sin_x(const Grid& g) {
  ScalarField f(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) f.at(ix, iy) = std::sin(g.x(ix));
  return f;
}

}  // namespace

TEST_CASE("hfunction derivative consistency") {
  const double delta = 1e-5;
  for (const HFunction& h :
       {HFunction::enstrophy(), HFunction::one_minus_cos(),
        HFunction::p_moment(3.0)}) {
    for (int i = 0; i < 100; ++i) {
      const double x = -5.0 + 10.0 * i / 99.0;
      const double fd1 = (h.h(x + delta) - h.h(x - delta)) / (2.0 * delta);
      CHECK(std::abs(fd1 - h.h_prime(x)) <= 1e-6 * (1.0 + std::abs(h.h_prime(x))));
      const double fd2 =
          (h.h_prime(x + delta) - h.h_prime(x - delta)) / (2.0 * delta);
      CHECK(std::abs(fd2 - h.h_doubleprime(x)) <=
            1e-6 * (1.0 + std::abs(h.h_doubleprime(x))));
      if (h.convex) CHECK(h.h_doubleprime(x) >= 0.0);
    }
  }
}

TEST_CASE("defect field vanishes for zero and stationary states") {
  Grid g(64);
  Mollifier m = Mollifier::bump(0.5);
  HFunction h = HFunction::enstrophy();

  ScalarField zero(g);
  CHECK(max_abs(defect_field(zero, h, m, 0.5)) == 0.0);

  // omega = sin x is a steady Euler state: u.grad omega = 0
  ScalarField z = defect_field(sin_x(g), h, m, 0.5);
  CHECK(std::abs(integral(z)) < 1e-10);
}

TEST_CASE("defect tilde vanishes for zero and stationary states") {
  Grid g(64);
  Mollifier m = Mollifier::bump(0.5);
  ScalarField zero(g);
  CHECK(max_abs(defect_tilde(zero, m, 0.5)) == 0.0);
  CHECK(std::abs(integral(defect_tilde(sin_x(g), m, 0.5))) < 1e-10);
}

TEST_CASE("constant h'' factors out of the defect field exactly") {
  Grid g(64);
  Mollifier m = Mollifier::bump(0.5);
  ScalarField w = random_field(g, 71);

  HFunction scaled;
  scaled.name = "3w2/2";
  scaled.h = [](double x) { return 1.5 * x * x; };
  scaled.h_prime = [](double x) { return 3.0 * x; };
  scaled.h_doubleprime = [](double) { return 3.0; };

  ScalarField z1 = defect_field(w, HFunction::enstrophy(), m, 0.5);
  ScalarField z3 = defect_field(w, scaled, m, 0.5);
  double err = 0.0;
  for (std::size_t i = 0; i < z1.values.size(); ++i)
    err = std::max(err, std::abs(z3.values[i] - 3.0 * z1.values[i]));
  CHECK(err <= 1e-14 * max_abs(z3) + 1e-300);
}

TEST_CASE("defect field parity under omega -> -omega") {
  // u flips with omega so sigma is even; grad omega_eps flips, hence for
  // constant h'' the defect field is odd in omega.
  Grid g(64);
  Mollifier m = Mollifier::bump(0.5);
  ScalarField w = random_field(g, 73);
  ScalarField wn = w;
  for (double& v : wn.values) v = -v;
  ScalarField zp = defect_field(w, HFunction::enstrophy(), m, 0.5);
  ScalarField zn = defect_field(wn, HFunction::enstrophy(), m, 0.5);
  double err = 0.0;
  for (std::size_t i = 0; i < zp.values.size(); ++i)
    err = std::max(err, std::abs(zn.values[i] + zp.values[i]));
  CHECK(err <= 1e-12 * max_abs(zp));
}

TEST_CASE("cross-estimator consistency of the two defect integrals") {
  Grid g(256);
  Mollifier m = Mollifier::bump(0.5);
  GenSpec spec;
  spec.kind = GenSpec::Kind::besov_random;
  spec.s = 0.5;
  spec.shell_mass = 1.0;
  spec.seed = 2;
  ScalarField w = generate(spec, g);
  HFunction h = HFunction::enstrophy();
  // The signed integrals of both estimators sit deep inside the cancellation
  // of the pointwise fields (a few percent of the integral of |Z|), so their
  // agreement is judged against that natural flux magnitude.
  for (double eps : {8.0 * g.dx, 16.0 * g.dx, 32.0 * g.dx}) {
    ScalarField z = defect_field(w, h, m, eps);
    const double a = integral(defect_tilde(w, m, eps));
    const double b = integral(z);
    double scale = 0.0;
    for (double v : z.values) scale += std::abs(v);
    scale *= g.dx * g.dx;
    CHECK(std::abs(a - b) <= 0.1 * scale);
  }
}

TEST_CASE("structure flux errors and trivial input") {
  Grid g(64);
  Mollifier m = Mollifier::bump(0.5);
  ScalarField zero(g);
  CHECK(max_abs(structure_flux(zero, m, 0.5)) == 0.0);
  CHECK_THROWS_AS(structure_flux(zero, m, 2.0 * g.dx), std::invalid_argument);
}

TEST_CASE("divergence identity couples structure flux and defect tilde") {
  // 4 * structure_flux = div[u (omega^2)_eps - (u omega^2)_eps] + 4 Ztilde
  Grid g(128);
  Mollifier m = Mollifier::bump(0.5);
  for (int i = 0; i < 3; ++i) {
    ScalarField w = dealias(random_field(g, 80 + i));
    const double eps = 0.5;
    ScalarField lhs = structure_flux(w, m, eps, StructureQuadrature::exact);
    for (double& v : lhs.values) v *= 4.0;

    VectorField u = biot_savart(w);
    ScalarField w2(g);
    for (std::size_t j = 0; j < w2.values.size(); ++j)
      w2.values[j] = w.values[j] * w.values[j];
    ScalarField w2e = filter(w2, m, eps);
    VectorField uw2(g);
    for (std::size_t j = 0; j < w2.values.size(); ++j) {
      uw2.x_component.values[j] = u.x_component.values[j] * w2.values[j];
      uw2.y_component.values[j] = u.y_component.values[j] * w2.values[j];
    }
    VectorField uw2e = filter(uw2, m, eps);
    // u . grad (omega^2)_eps - div (u omega^2)_eps + 4 Ztilde: the transport
    // term stays in product form so both sides alias identically
    VectorField gw2e = gradient(w2e);
    ScalarField div_uw2e = divergence(uw2e);
    ScalarField zt = defect_tilde(w, m, eps);
    ScalarField rhs(g);
    for (std::size_t j = 0; j < rhs.values.size(); ++j)
      rhs.values[j] = u.x_component.values[j] * gw2e.x_component.values[j] +
                      u.y_component.values[j] * gw2e.y_component.values[j] -
                      div_uw2e.values[j] + 4.0 * zt.values[j];

    ScalarField diff = lhs;
    for (std::size_t j = 0; j < diff.values.size(); ++j)
      diff.values[j] -= rhs.values[j];
    CHECK(lp_norm(diff, 2.0) <= 1e-8 * lp_norm(lhs, 2.0));
  }
}

TEST_CASE("disk quadrature tracks the exact quadrature") {
  Grid g(128);
  Mollifier m = Mollifier::bump(0.5);
  ScalarField w = dealias(random_field(g, 89));
  ScalarField a = structure_flux(w, m, 0.5, StructureQuadrature::disk);
  ScalarField b = structure_flux(w, m, 0.5, StructureQuadrature::exact);
  const double ia = integral(a), ib = integral(b);
  CHECK(std::abs(ia - ib) <= 0.2 * std::max(std::abs(ia), std::abs(ib)));
}

TEST_CASE("residual diagnostics") {
  Grid g(128);
  Mollifier m = Mollifier::bump(0.5);
  ScalarField zero(g);
  ResidualDiagnostics rd0 = residual_field(zero, m, 0.5);
  CHECK(max_abs(rd0.r) == 0.0);
  CHECK(rd0.lemma_ratio == 0.0);

  // ratio bounded uniformly over eps and fields
  for (int i = 0; i < 20; ++i) {
    ScalarField w = random_field(g, 600 + i);
    for (double eps : {8.0 * g.dx, 32.0 * g.dx, 64.0 * g.dx})
      CHECK(residual_field(w, m, eps).lemma_ratio <= 5.0);
  }
}

TEST_CASE("residual of a smooth field vanishes at rate eps^2") {
  Grid g(512);
  Mollifier m = Mollifier::bump(0.3);
  ScalarField w = random_field(g, 97, 4);
  std::vector<double> eps_list, norms;
  for (double eps = 8.0 * g.dx; eps <= 64.0 * g.dx * 1.0001; eps *= 1.3) {
    eps_list.push_back(eps);
    norms.push_back(lp_norm(residual_field(w, m, eps).r, 1.0));
  }
  SlopeFit fit =
      fit_loglog_slope(eps_list, norms, eps_list.front(), eps_list.back());
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("model stresses on a single-mode shear flow") {
  // omega = -cos y gives u = (sin y, 0); the filtered gradient tensor has
  // d12 = cos(y) a, others 0, with a the eps-multiplier at |k| = 1. Then
  //   nonlinear: C eps^2 (d12 * d(omega_eps)/dy, 0) = C eps^2 a^2 cos y sin y ex
  //   eddy: S = |cos y| a / 2, stress = -C eps^2 S (0, a sin y)
  Grid g(64);
  Mollifier m = Mollifier::bump(0.5);
  const double eps = 0.5, c = kDefaultModelConstant;
  ScalarField w(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) w.at(ix, iy) = -std::cos(g.y(iy));
  const double a = (*m.multiplier(g, eps))[g.index(0, 1)];

  VectorField nl = model_stress_nonlinear(w, m, eps, c);
  VectorField ed = model_stress_eddy(w, m, eps, c);
  double err_nl = 0.0, err_ed = 0.0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const double y = g.y(iy);
      const double expect_nl =
          c * eps * eps * a * a * std::cos(y) * std::sin(y);
      err_nl = std::max(err_nl,
                        std::abs(nl.x_component.at(ix, iy) - expect_nl));
      err_nl = std::max(err_nl, std::abs(nl.y_component.at(ix, iy)));
      const double s = 0.5 * a * std::abs(std::cos(y));
      const double expect_ed = -c * eps * eps * s * a * std::sin(y);
      err_ed = std::max(err_ed,
                        std::abs(ed.y_component.at(ix, iy) - expect_ed));
      err_ed = std::max(err_ed, std::abs(ed.x_component.at(ix, iy)));
    }
  CHECK(err_nl < 1e-12);
  CHECK(err_ed < 1e-12);
}

TEST_CASE("model stress basics") {
  Grid g(64);
  Mollifier m = Mollifier::bump(0.5);
  ScalarField zero(g);
  VectorField nl = model_stress_nonlinear(zero, m, 0.5, 1.0);
  VectorField ed = model_stress_eddy(zero, m, 0.5, 1.0);
  CHECK(max_abs(nl.x_component) == 0.0);
  CHECK(max_abs(ed.y_component) == 0.0);

  // cosine similarity is a bounded diagnostic
  ScalarField w = random_field(g, 101);
  VectorField sigma = subgrid_stress(biot_savart(w), w, m, 0.5);
  const double cos_nl =
      vector_field_cosine(model_stress_nonlinear(w, m, 0.5, 1.0), sigma);
  CHECK(std::abs(cos_nl) <= 1.0 + 1e-12);
  CHECK(vector_field_cosine(nl, sigma) == 0.0);
}

TEST_CASE("viscous dissipation closed form and positivity") {
  Grid g(64);
  HFunction h = HFunction::enstrophy();
  ScalarField w = sin_x(g);
  CHECK(max_abs(viscous_dissipation(w, h, 0.0)) == 0.0);
  CHECK_THROWS_AS(viscous_dissipation(w, h, -1.0), std::invalid_argument);

  ScalarField d = viscous_dissipation(w, h, 0.1);
  double err = 0.0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const double c = std::cos(g.x(ix));
      err = std::max(err, std::abs(d.at(ix, iy) - 0.1 * c * c));
    }
  CHECK(err < 1e-12);

  for (int i = 0; i < 10; ++i) {
    ScalarField r = random_field(g, 700 + i);
    ScalarField dr = viscous_dissipation(r, HFunction::p_moment(4.0), 0.3);
    double mn = 0.0;
    for (double v : dr.values) mn = std::min(mn, v);
    CHECK(mn >= 0.0);
  }
}

TEST_CASE("dissipation rate series") {
  Grid g(64);
  Mollifier m = Mollifier::bump(0.5);
  HFunction h = HFunction::enstrophy();
  ScalarField w = random_field(g, 103);

  std::vector<std::pair<double, ScalarField>> steady;
  for (int i = 0; i < 5; ++i) steady.emplace_back(0.1 * i, w);
  auto series = dissipation_rate(steady, h, m, {0.5});
  REQUIRE(series.size() == 1);
  CHECK(series[0].times.size() == 3);
  for (double r : series[0].rate) CHECK(std::abs(r) < 1e-12);

  std::vector<std::pair<double, ScalarField>> two(steady.begin(),
                                                  steady.begin() + 2);
  CHECK_THROWS_AS(dissipation_rate(two, h, m, {0.5}), std::invalid_argument);

  auto skewed = steady;
  skewed[2].first += 0.03;
  CHECK_THROWS_AS(dissipation_rate(skewed, h, m, {0.5}), std::invalid_argument);
}

TEST_CASE("flux curve bookkeeping") {
  Grid g(64);
  Mollifier m = Mollifier::bump(0.5);
  HFunction h = HFunction::enstrophy();
  ScalarField w = random_field(g, 107);
  FluxCurve c = flux_curve(w, h, m, {8.0 * g.dx, 16.0 * g.dx});
  CHECK(c.eps_values.size() == 2);
  CHECK(c.flux_abs_integral[0] >= std::abs(c.flux_integral[0]));
  CHECK(c.method_tag == "defect:enstrophy");
  CHECK_THROWS_AS(flux_curve(w, h, m, {0.5, 0.4}), std::invalid_argument);
}

TEST_CASE("loglog fit recovers an exact power law") {
  std::vector<double> eps = {0.1, 0.2, 0.4, 0.8};
  std::vector<double> vals;
  for (double e : eps) vals.push_back(3.0 * std::pow(e, 1.7));
  SlopeFit fit = fit_loglog_slope(eps, vals, 0.1, 0.8);
  CHECK(fit.slope == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(std::exp(fit.intercept) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit.stderr_slope < 1e-10);

  SlopeFit window = fit_loglog_slope(eps, vals, 0.15, 0.5);
  CHECK(window.slope == doctest::Approx(1.7).epsilon(1e-12));
  CHECK_THROWS_AS(fit_loglog_slope(eps, vals, 0.11, 0.15),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_loglog_slope(eps, {1.0, -1.0, 1.0, 1.0}, 0.1, 0.8),
                  std::invalid_argument);
}
