#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace cascade {

// Domain is fixed at [0, 2*pi)^2.
constexpr double kDomainLength = 2.0 * M_PI;

// Periodic square grid. n must be a power of two, n >= 8.
struct Grid {
  int n = 0;
  double dx = 0.0;

  Grid() = default;
  explicit Grid(int n_points) : n(n_points), dx(kDomainLength / n_points) {
    if (n < 8 || (n & (n - 1)) != 0)
      throw std::invalid_argument("Grid: n must be a power of two, n >= 8");
  }

  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * n + ix;
  }

  double x(int ix) const { return ix * dx; }
  double y(int iy) const { return iy * dx; }

  // Integer wavenumber for a transform index, lattice {-n/2+1, ..., n/2}.
  int wave(int i) const { return i <= n / 2 ? i : i - n; }

  bool operator==(const Grid& o) const { return n == o.n; }
  bool operator!=(const Grid& o) const { return n != o.n; }
};

}  // namespace cascade
