#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "hslab/params.hpp"

namespace hslab {

enum class ProfileSource { closed_form, shooting };

/// Radial solution profile of the singular ball problem on [0, 1]:
///   u'' + (N-1)/r u' + 2^s u^{p-1} / (1-r^2)^s = 0,  u'(0) = 0, u(1) = 0.
/// Values and derivatives are stored on a strictly increasing grid with
/// r_0 = 0 and r_M = 1; evaluation between nodes is Hermite interpolation.
struct RadialProfile {
  ProblemParams params;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> derivs;
  double shoot_param = 0.0;     // u(0)
  double boundary_slope = 0.0;  // u'(1) = -V(1) < 0
  ProfileSource source = ProfileSource::shooting;
};

/// Closed-form profiles for the two explicit families; nullopt otherwise.
std::optional<RadialProfile> closed_form_profile(const ProblemParams& params);

struct ShootTrace {
  // (shoot parameter, overshoot?) in the order tried
  std::vector<std::pair<double, bool>> attempts;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  double endpoint_gap = 0.0;  // |u| extrapolated to r = 1
};

/// Shooting solve by monotone bisection on a = u(0).
RadialProfile shoot(const ProblemParams& params, double tol,
                    ShootTrace* trace = nullptr);

/// Closed form when available, shooting otherwise.
RadialProfile solve_profile(const ProblemParams& params, double tol);

/// (u(r), u'(r)); Hermite dense output between grid nodes.
std::pair<double, double> evaluate_profile(const RadialProfile& profile,
                                           double r);

/// Second derivative from the ODE itself (with the boundary limit at r=1).
double profile_second_derivative(const RadialProfile& profile, double r,
                                 double u, double du);

/// Weighted max-norm residual of the first integral
///   u'(r) + r^{1-N} \int_0^r 2^s t^{N-1} u^{p-1} (1-t^2)^{-s} dt = 0
/// over the interior nodes; an a posteriori check independent of the
/// integrator's own error control.
double profile_residual(const RadialProfile& profile);

/// Number of interior critical points of (1+r)^{N-2} u(r) on [0, 1)
/// (reported, never asserted).
int critical_point_count(const RadialProfile& profile);

/// Columnar text format: header lines with params, then "r u du" rows.
void write_profile(std::ostream& os, const RadialProfile& profile);
RadialProfile read_profile(std::istream& is);

}  // namespace hslab
