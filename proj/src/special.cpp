#include "hslab/special.hpp"

#include <cmath>
#include <stdexcept>

namespace hslab {

namespace {

// Lanczos approximation, g = 7, 9 coefficients.
constexpr double kPi = 3.14159265358979323846;
constexpr int kG = 7;
constexpr double kCoef[kG + 2] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be > 0");
  if (x < 0.5) {
    // reflection keeps the series argument in the well-conditioned range
    return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double acc = kCoef[0];
  for (int i = 1; i < kG + 2; ++i) acc += kCoef[i] / (z + i);
  const double t = z + kG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

double sphere_area(int m) {
  if (m < 0) throw std::domain_error("sphere_area: m must be >= 0");
  const double half = 0.5 * (m + 1);
  return 2.0 * std::pow(kPi, half) / gamma_fn(half);
}

}  // namespace hslab
