#pragma once

#include <functional>
#include <vector>

namespace hslab {

/// Point of the closed half-space R^N_+ = {(x', x_N) : x_N >= 0}.
struct HalfSpacePoint {
  std::vector<double> tangential;  // x', length N-1
  double normal = 0.0;             // x_N
};

/// Point of the closed unit ball B^N.
struct BallPoint {
  std::vector<double> y;
};

/// Conformal equivalence half-space -> unit ball,
///   y' = 2x' / D,  y_N = (1 - |x|^2) / D,  D = |x'|^2 + (1 + x_N)^2.
BallPoint to_ball(const HalfSpacePoint& x);

/// Inverse map; rejects points within 1e-10 of -e_N (the image of infinity).
HalfSpacePoint from_ball(const BallPoint& y);

/// Conformal factor |f'|(x) = 2 / |x + e_N|^2.  Satisfies the radius rule
/// (1 - |to_ball(x)|^2) = |f'| * 2 x_N.
double conformal_factor(const HalfSpacePoint& x);

/// Transport of a radial ball profile to the half-space:
///   U(x) = 2^{(N-2)/2} / |x + e_N|^{N-2} * profile(|to_ball(x)|).
double pullback_profile(const std::function<double(double)>& profile,
                        const HalfSpacePoint& x, int dim);

}  // namespace hslab
