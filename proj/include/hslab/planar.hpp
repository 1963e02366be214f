#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "hslab/params.hpp"

namespace hslab {

using Complex = std::complex<double>;

/// A 2D domain with an explicit Riemann map onto the unit disk.  The
/// harmonic radius comes from the Liouville formula r = (1-|f|^2)/|f'|.
struct ConformalDomain {
  std::string id;
  std::function<Complex(Complex)> riemann_map;
  std::function<Complex(Complex)> map_derivative;
  std::function<Complex(Complex)> inverse_map;
  std::function<bool(Complex)> contains;          // strict interior
  std::function<double(Complex)> boundary_distance;  // delta_Omega
  bool convex = false;
};

/// Gallery: disk, half_plane (upper), strip(height), sector(angle).
ConformalDomain make_disk();
ConformalDomain make_half_plane();
ConformalDomain make_strip(double height);
ConformalDomain make_sector(double angle);

/// Conformal map between two gallery domains, with derivative and inverse.
struct ConformalMap {
  std::function<Complex(Complex)> forward;
  std::function<Complex(Complex)> derivative;
  std::function<Complex(Complex)> inverse;
};

ConformalMap half_plane_to_disk();
ConformalMap strip_to_half_plane(double height);

/// Liouville harmonic radius at an interior point; rejects the boundary.
double harmonic_radius(const ConformalDomain& domain, Complex z);

struct RadiusBoundsReport {
  double min_r_over_delta = 0.0;  // >= 1 always (property delta <= r)
  double max_r_over_delta = 0.0;  // <= 2 on convex domains
  bool lower_ok = false;
  bool upper_ok = false;
};

/// Checks delta <= r (all domains) and r <= 2 delta (convex domains) on
/// the given interior samples.
RadiusBoundsReport radius_bounds_check(const ConformalDomain& domain,
                                       const std::vector<Complex>& samples);

/// Smooth compactly supported test function with an analytic gradient.
struct TestFunction2D {
  std::function<double(double, double)> value;
  std::function<std::array<double, 2>(double, double)> gradient;
  // bounding box of the support
  double cx = 0.0, cy = 0.0, radius = 1.0;
};

/// Standard mollifier bump exp(-1/(1-t^2)), t = |x-c|/R, supported in the
/// disk of radius R around (cx, cy).
TestFunction2D make_bump(double cx, double cy, double radius);

/// Product of a closure with an existing function (e.g. a profile times a
/// wide cutoff); gradients combined by the product rule.
TestFunction2D multiply(const TestFunction2D& a, const TestFunction2D& b);

/// J[u] = \int |grad u|^2 / (\int r_Omega^{-s} |u|^p)^{2/p}; N = 2 only.
double quotient_J(const ConformalDomain& domain, const TestFunction2D& u,
                  const ProblemParams& params, double tol);

struct InvarianceReport {
  double energy_a = 0.0, energy_b = 0.0;
  double weighted_a = 0.0, weighted_b = 0.0;
  double energy_residual = 0.0;    // relative
  double weighted_residual = 0.0;  // relative
};

/// Transports u from domain A to B through the conformal map (N = 2, so
/// the transported function is the plain composition) and compares the
/// Dirichlet energies and weighted p-norms on the two sides.
InvarianceReport invariance_check(const ConformalDomain& a,
                                  const ConformalDomain& b,
                                  const ConformalMap& map,
                                  const TestFunction2D& u,
                                  const ProblemParams& params, double tol);

/// Margin of the conformal Hardy inequality
///   \int u^2 / r_Omega^2 <= \int |grad u|^2;  must come out nonnegative.
double conformal_hardy_check(const ConformalDomain& domain,
                             const TestFunction2D& u, double tol);

}  // namespace hslab
