#pragma once

#include <functional>
#include <string>

namespace cascade {

// A C^2 "entropy" h with its first two derivatives and a growth-class tag:
// |h'(w)| <= C (1 + |w|^{r-1}).
struct HFunction {
  std::string name;
  std::function<double(double)> h;
  std::function<double(double)> h_prime;
  std::function<double(double)> h_doubleprime;
  double growth_exponent = 2.0;
  bool convex = true;

  static HFunction enstrophy();            // h(w) = w^2 / 2
  static HFunction p_moment(double p);     // h(w) = |w|^p / p
  static HFunction one_minus_cos();        // h(w) = 1 - cos(w), bounded
};

}  // namespace cascade
