#include "cascade/hfunction.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade {

HFunction HFunction::enstrophy() {
  HFunction f;
  f.name = "enstrophy";
  f.h = [](double w) { return 0.5 * w * w; };
  f.h_prime = [](double w) { return w; };
  f.h_doubleprime = [](double) { return 1.0; };
  f.growth_exponent = 2.0;
  f.convex = true;
  return f;
}

HFunction HFunction::p_moment(double p) {
  if (p < 2.0) throw std::invalid_argument("p_moment: need p >= 2 for C^2");
  HFunction f;
  f.name = "moment_p" + std::to_string(p);
  f.h = [p](double w) { return std::pow(std::abs(w), p) / p; };
  f.h_prime = [p](double w) {
    return std::pow(std::abs(w), p - 1.0) * (w < 0 ? -1.0 : 1.0);
  };
  f.h_doubleprime = [p](double w) {
    return (p - 1.0) * std::pow(std::abs(w), p - 2.0);
  };
  f.growth_exponent = p;
  f.convex = true;
  return f;
}

HFunction HFunction::one_minus_cos() {
  HFunction f;
  f.name = "one_minus_cos";
  f.h = [](double w) { return 1.0 - std::cos(w); };
  f.h_prime = [](double w) { return std::sin(w); };
  f.h_doubleprime = [](double w) { return std::cos(w); };
  f.growth_exponent = 1.0;  // bounded derivative
  f.convex = false;
  return f;
}

}  // namespace cascade
