#include "hslab/mobius.hpp"

#include <cmath>
#include <stdexcept>

namespace hslab {

namespace {

double norm_sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return s;
}

}  // namespace

BallPoint to_ball(const HalfSpacePoint& x) {
  if (x.normal < 0.0)
    throw std::invalid_argument("to_ball: point below the boundary plane");
  const double tsq = norm_sq(x.tangential);
  const double d = tsq + (1.0 + x.normal) * (1.0 + x.normal);
  BallPoint y;
  y.y.resize(x.tangential.size() + 1);
  for (size_t i = 0; i < x.tangential.size(); ++i)
    y.y[i] = 2.0 * x.tangential[i] / d;
  y.y.back() = (1.0 - tsq - x.normal * x.normal) / d;
  return y;
}

HalfSpacePoint from_ball(const BallPoint& y) {
  if (y.y.empty()) throw std::invalid_argument("from_ball: empty point");
  const size_t n = y.y.size();
  double tsq = 0.0;
  for (size_t i = 0; i + 1 < n; ++i) tsq += y.y[i] * y.y[i];
  const double yn = y.y.back();
  if (tsq + yn * yn > 1.0 + 1e-12)
    throw std::invalid_argument("from_ball: point outside the closed ball");
  const double d = tsq + (1.0 + yn) * (1.0 + yn);
  if (d < 1e-20)
    throw std::invalid_argument("from_ball: -e_N is the image of infinity");
  // reject a small neighbourhood of -e_N as well; |y + e_N| < 1e-10
  if (std::sqrt(d) < 1e-10)
    throw std::invalid_argument("from_ball: too close to -e_N");
  HalfSpacePoint x;
  x.tangential.resize(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) x.tangential[i] = 2.0 * y.y[i] / d;
  x.normal = (1.0 - tsq - yn * yn) / d;
  if (x.normal < 0.0 && x.normal > -1e-14) x.normal = 0.0;
  return x;
}

double conformal_factor(const HalfSpacePoint& x) {
  const double d =
      norm_sq(x.tangential) + (x.normal + 1.0) * (x.normal + 1.0);
  return 2.0 / d;
}

double pullback_profile(const std::function<double(double)>& profile,
                        const HalfSpacePoint& x, int dim) {
  const BallPoint y = to_ball(x);
  const double r = std::sqrt(norm_sq(y.y));
  const double d =
      norm_sq(x.tangential) + (x.normal + 1.0) * (x.normal + 1.0);
  // |det DM|^{(N-2)/2N} = (2/|x+e_N|^2)^{(N-2)/2}
  const double jac = std::pow(2.0 / d, 0.5 * (dim - 2));
  return jac * profile(std::min(r, 1.0));
}

}  // namespace hslab
