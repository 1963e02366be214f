#pragma once

#include <array>
#include <functional>
#include <optional>

#include "hslab/params.hpp"
#include "hslab/radial.hpp"

namespace hslab {

/// Half-space integral with an a posteriori error bound.
struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;    // quadrature error + tail bound
  double truncation_radius = 0.0; // outer cutoff R
  int refinement_levels = 0;
};

/// Integral over R^N_+ of a cylindrically symmetric integrand,
///   \int F dx = omega_{N-2} \iint f(r, x_N) r^{N-2} dr dx_N,
/// with r = |x'|.  The quarter-plane is truncated at a radius chosen from
/// the sampled decay of the integrand and mapped to a unit square through
/// t -> t^2/(1-t) on each axis, which grades the nodes toward the
/// singular edges r = 0 and x_N = 0.  tol is relative.
IntegralResult integrate_cylindrical(
    const std::function<double(double, double)>& f, const ProblemParams& params,
    double tol);

/// The extremal U on the half-space as a function of (r, x_N), with
/// first derivatives; second derivatives for the explicit families only.
/// Closed-form profiles evaluate analytically; shooting profiles go
/// through the ball map by the chain rule, never by differencing U.
class HalfSpaceExtremal {
 public:
  HalfSpaceExtremal(const ProblemParams& params, const RadialProfile& profile);

  double value(double r, double xn) const;
  /// {dU/dr, dU/dx_N}
  std::array<double, 2> gradient(double r, double xn) const;
  /// Second derivatives d2U/dr2, d2U/(dr dx_N); analytic backend only.
  double second_rr(double r, double xn) const;
  double second_rn(double r, double xn) const;

  bool analytic() const { return analytic_; }
  const ProblemParams& params() const { return params_; }

 private:
  ProblemParams params_;
  RadialProfile profile_;
  bool analytic_ = false;
  double c_ = 0.0;       // closed-form amplitude
  double d2u0_ = 0.0;    // profile curvature at r = 0 (shooting backend)
};

struct MuReport {
  double value = 0.0;            // mu_p = (energy)^{(p-2)/p}
  double energy_gradient = 0.0;  // \int |grad U|^2
  double energy_weighted = 0.0;  // \int x_N^{-s} U^p
  double dual_gap = 0.0;         // relative disagreement of the two energies
};

/// Best constant of the half-space inequality, computed from the Dirichlet
/// energy and cross-checked against the weighted p-norm.
MuReport mu_half_space(const ProblemParams& params, const RadialProfile& profile,
                       double tol);

struct PohozaevReport {
  double I1 = 0.0;  // \int [-x_N|grad U|^2 + 2 x_N (d_{x_1} U)^2]
  double I2 = 0.0;  // \int x_N^{1-s} U^p
  double residual_main = 0.0;   // |I1 + (2(N-1)-s)/((N-1)p) I2| / |I2|
  double residual_tv1 = 0.0;    // |I2 - \int x_N |grad U|^2| / |I2|
  double residual_shear = 0.0;  // shear identity, relative
};

PohozaevReport pohozaev_report(const ProblemParams& params,
                               const RadialProfile& profile, double tol);

/// I1 + (2/p) I2; checked against s/((N-1)p) I2 and required positive.
double curvature_slope(const ProblemParams& params, const RadialProfile& profile,
                       double tol);

/// Coefficients of the second-order test-function quadratic
///   q(A) = const + lin A + quad A^2
/// for the perturbation Z = r^{-1} dU/dr, and its discriminant in the
/// normalization of the printed closed forms.
struct DiscriminantReport {
  double I3 = 0.0;
  double I4 = 0.0;
  double const_coeff = 0.0;      // I3 + (2/p) I4
  double const_coeff_alt = 0.0;  // I3 + (2/(p+1)) I4, reported alongside
  double lin_coeff = 0.0;
  double quad_coeff = 0.0;
  double D = 0.0;                // discriminant built on const_coeff
  double D_alt = 0.0;            // discriminant built on const_coeff_alt
  double A_star = 0.0;           // argmin of q
  double min_value = 0.0;        // q(A_star)
  bool attainable = false;       // min_value < 0
};

/// Quadrature evaluation of the discriminant data; explicit families only.
DiscriminantReport discriminant_report(const ProblemParams& params, double tol);

struct ClosedFormDiscriminant {
  double const_coeff = 0.0;  // the printed constant-term combination
  double D = 0.0;
};

/// Printed Gamma-function closed forms (available for both explicit
/// families at N >= 3).
std::optional<ClosedFormDiscriminant> discriminant_closed_form(Family family,
                                                               int dim);

}  // namespace hslab
