#include <doctest.h>

#include <cmath>
#include <limits>

#include "cascade/fft.hpp"
#include "cascade/operators.hpp"

#include "test_util.hpp"

using namespace cascade;
using testutil::max_abs;
using testutil::max_abs_diff;
using testutil::random_field;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("grid validates resolution") {
  CHECK_THROWS_AS(Grid(7), std::invalid_argument);
  CHECK_THROWS_AS(Grid(4), std::invalid_argument);
  CHECK_THROWS_AS(Grid(48), std::invalid_argument);
  Grid g(64);
  CHECK(g.dx * g.n == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
  CHECK(g.wave(0) == 0);
  CHECK(g.wave(32) == 32);
  CHECK(g.wave(33) == -31);
}

TEST_CASE("fft of a constant field") {
  Grid g(32);
  ScalarField f(g);
  for (double& v : f.values) v = 3.0;
  SpectralScalar F = fft_forward(f);
  CHECK(F.coefficients[0].real() == doctest::Approx(3.0).epsilon(1e-14));
  double rest = 0.0;
  for (std::size_t i = 1; i < F.coefficients.size(); ++i)
    rest = std::max(rest, std::abs(F.coefficients[i]));
  CHECK(rest < 1e-14);
}

TEST_CASE("fft of cos x") {
  Grid g(32);
  ScalarField f(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) f.at(ix, iy) = std::cos(g.x(ix));
  SpectralScalar F = fft_forward(f);
  CHECK(F.at(1, 0).real() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(F.at(g.n - 1, 0).real() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(std::abs(F.at(1, 0).imag()) < 1e-14);
}

TEST_CASE("fft round-trip on random data") {
  Grid g(64);
  ScalarField f = random_field(g, 42, g.n / 2 - 1);
  ScalarField f2 = fft_inverse(fft_forward(f));
  CHECK(max_abs_diff(f, f2) < 1e-12 * max_abs(f));
}

TEST_CASE("fft rejects non-finite input") {
  Grid g(16);
  ScalarField f(g);
  f.values[5] = std::nan("");
  CHECK_THROWS_AS(fft_forward(f), std::domain_error);
}

TEST_CASE("fft hermitian symmetry of real input") {
  Grid g(32);
  SpectralScalar F = fft_forward(random_field(g, 7));
  double dev = 0.0, scale = 0.0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const auto a = F.at(ix, iy);
      const auto b = std::conj(F.at((g.n - ix) % g.n, (g.n - iy) % g.n));
      dev = std::max(dev, std::abs(a - b));
      scale = std::max(scale, std::abs(a));
    }
  CHECK(dev <= 1e-12 * scale);
}

TEST_CASE("biot-savart inverts sin x") {
  Grid g(64);
  ScalarField w(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) w.at(ix, iy) = std::sin(g.x(ix));
  VectorField u = biot_savart(w);
  double err = 0.0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      err = std::max(err, std::abs(u.x_component.at(ix, iy)));
      err = std::max(err,
                     std::abs(u.y_component.at(ix, iy) + std::cos(g.x(ix))));
    }
  CHECK(err < 1e-13);
}

TEST_CASE("biot-savart inverts the Taylor-Green vortex") {
  // omega = 2 cos x cos y -> u = (-cos x sin y, sin x cos y)
  Grid g(64);
  ScalarField w(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix)
      w.at(ix, iy) = 2.0 * std::cos(g.x(ix)) * std::cos(g.y(iy));
  VectorField u = biot_savart(w);
  double err = 0.0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      err = std::max(err, std::abs(u.x_component.at(ix, iy) +
                                   std::cos(g.x(ix)) * std::sin(g.y(iy))));
      err = std::max(err, std::abs(u.y_component.at(ix, iy) -
                                   std::sin(g.x(ix)) * std::cos(g.y(iy))));
    }
  CHECK(err < 1e-13);
}

TEST_CASE("biot-savart round-trip and divergence-free output") {
  Grid g(128);
  ScalarField w = random_field(g, 3);
  VectorField u = biot_savart(w);
  CHECK(max_abs_diff(curl2d(u), w) < 1e-10 * max_abs(w));
  const double umax = lp_norm(u, kInf);
  CHECK(max_abs(divergence(u)) <= 1e-10 * umax);
}

TEST_CASE("biot-savart projects out the mean and reports it") {
  Grid g(32);
  ScalarField w = random_field(g, 5);
  for (double& v : w.values) v += 1.5;
  double removed = 0.0;
  VectorField u = biot_savart(w, &removed);
  CHECK(removed == doctest::Approx(1.5).epsilon(1e-12));
  // output equals the zero-mean inversion
  for (double& v : w.values) v -= 1.5;
  VectorField u0 = biot_savart(w);
  CHECK(max_abs_diff(u.x_component, u0.x_component) < 1e-13);
}

TEST_CASE("differential operator closed forms") {
  Grid g(64);
  ScalarField sx(g), cc(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      sx.at(ix, iy) = std::sin(g.x(ix));
      cc.at(ix, iy) = std::cos(g.x(ix)) * std::cos(g.y(iy));
    }
  VectorField gr = gradient(sx);
  double err = 0.0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      err = std::max(err, std::abs(gr.x_component.at(ix, iy) -
                                   std::cos(g.x(ix))));
      err = std::max(err, std::abs(gr.y_component.at(ix, iy)));
    }
  CHECK(err < 1e-13);

  ScalarField lap = laplacian(cc);
  err = 0.0;
  for (std::size_t i = 0; i < lap.values.size(); ++i)
    err = std::max(err, std::abs(lap.values[i] + 2.0 * cc.values[i]));
  CHECK(err < 1e-12);
}

TEST_CASE("vector calculus identities") {
  Grid g(64);
  ScalarField f = random_field(g, 9);
  CHECK(max_abs(divergence(perp_gradient(f))) <= 1e-12 * lp_norm(f, kInf));
  CHECK(max_abs(curl2d(gradient(f))) <= 1e-12 * lp_norm(f, kInf));
}

TEST_CASE("lp_norm closed forms and properties") {
  Grid g(32);
  ScalarField one(g), sx(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      one.at(ix, iy) = 1.0;
      sx.at(ix, iy) = std::sin(g.x(ix));
    }
  CHECK(lp_norm(one, 2.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-13));
  CHECK(lp_norm(sx, 2.0) ==
        doctest::Approx(M_PI * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(lp_norm(one, kInf) == doctest::Approx(1.0));
  CHECK_THROWS_AS(lp_norm(one, 0.5), std::invalid_argument);

  ScalarField f = random_field(g, 11);
  CHECK(lp_norm(f, 1.0) <= 2.0 * M_PI * lp_norm(f, 2.0) * (1.0 + 1e-12));
  ScalarField f3 = f;
  for (double& v : f3.values) v *= -2.5;
  CHECK(lp_norm(f3, 2.0) == doctest::Approx(2.5 * lp_norm(f, 2.0)));
}

TEST_CASE("Calderon-Zygmund sanity on random fields") {
  Grid g(64);
  for (int i = 0; i < 100; ++i) {
    ScalarField w = random_field(g, 1000 + i);
    VectorField u = biot_savart(w);
    VectorField gx = gradient(u.x_component);
    VectorField gy = gradient(u.y_component);
    const double grad2 = std::sqrt(lp_norm(gx, 2.0) * lp_norm(gx, 2.0) +
                                   lp_norm(gy, 2.0) * lp_norm(gy, 2.0));
    CHECK(grad2 == doctest::Approx(lp_norm(w, 2.0)).epsilon(1e-10));
    for (double p : {4.0 / 3.0, 4.0}) {
      const double gp = std::pow(
          std::pow(lp_norm(gx, p), p) + std::pow(lp_norm(gy, p), p), 1.0 / p);
      CHECK(gp <= 10.0 * lp_norm(w, p));
    }
  }
}

TEST_CASE("dealiased product truncates to |k| <= n/3") {
  Grid g(32);
  ScalarField f = random_field(g, 13, g.n / 2 - 1);
  SpectralScalar F = fft_forward(dealias(f));
  double high = 0.0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix)
      if (std::abs(g.wave(ix)) > g.n / 3 || std::abs(g.wave(iy)) > g.n / 3)
        high = std::max(high, std::abs(F.at(ix, iy)));
  CHECK(high < 1e-14);  // re-transform of the truncated field, roundoff only
}

TEST_CASE("spectral shift by a lattice vector equals an index roll") {
  Grid g(32);
  ScalarField f = random_field(g, 17);
  ScalarField s = spectral_shift(f, 3 * g.dx, 5 * g.dx);
  double err = 0.0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix)
      err = std::max(err, std::abs(s.at(ix, iy) -
                                   f.at((ix + 3) % g.n, (iy + 5) % g.n)));
  CHECK(err < 1e-11 * max_abs(f));
}
