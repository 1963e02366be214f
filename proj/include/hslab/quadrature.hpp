#pragma once

#include <functional>
#include <vector>

namespace hslab {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;   // a posteriori estimate
  int levels = 0;       // deepest bisection level reached
  bool converged = true;
};

/// Adaptive Gauss-Kronrod (G7,K15) on [a, b].
QuadResult integrate_1d(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, double rel_tol = 1e-12,
                        int max_intervals = 20000);

/// Iterated adaptive quadrature over the box [ax,bx] x [ay,by].
/// The inner (x) integral is resolved a factor tighter than the outer one.
QuadResult integrate_2d(const std::function<double(double, double)>& f,
                        double ax, double bx, double ay, double by,
                        double abs_tol, double rel_tol = 1e-10);

/// Integral of f over the unit m-sphere in R^{m+1} (surface measure).
/// Product rule: Gauss-Legendre in the polar angles, trapezoid in the
/// azimuth; exact for low-degree polynomial integrands.
double integrate_sphere(int m, const std::function<double(const double*)>& f,
                        int order = 48);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace hslab
