#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cascade/grid.hpp"

namespace cascade {

// Real-space scalar samples, row-major: values[iy*n + ix].
struct ScalarField {
  Grid grid;
  std::vector<double> values;
  std::optional<double> time_tag;

  ScalarField() = default;
  explicit ScalarField(const Grid& g) : grid(g), values(g.size(), 0.0) {}
  ScalarField(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != g.size())
      throw std::invalid_argument("ScalarField: sample count mismatch");
  }

  double& at(int ix, int iy) { return values[grid.index(ix, iy)]; }
  double at(int ix, int iy) const { return values[grid.index(ix, iy)]; }

  bool finite() const {
    for (double v : values)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

struct VectorField {
  Grid grid;
  ScalarField x_component;
  ScalarField y_component;

  VectorField() = default;
  explicit VectorField(const Grid& g)
      : grid(g), x_component(g), y_component(g) {}
};

// Fourier coefficients on the wavenumber lattice, same row-major layout as
// ScalarField; entry (ix, iy) carries (kx, ky) = (wave(ix), wave(iy)).
// Normalized so that coefficients[0] = mean of the real-space field.
struct SpectralScalar {
  Grid grid;
  std::vector<std::complex<double>> coefficients;

  SpectralScalar() = default;
  explicit SpectralScalar(const Grid& g) : grid(g), coefficients(g.size()) {}

  std::complex<double>& at(int ix, int iy) {
    return coefficients[grid.index(ix, iy)];
  }
  std::complex<double> at(int ix, int iy) const {
    return coefficients[grid.index(ix, iy)];
  }
};

}  // namespace cascade
