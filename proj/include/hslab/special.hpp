#pragma once

namespace hslab {

/// Gamma function for real positive arguments (Lanczos approximation,
/// good to ~13 significant digits on the range used here).
double gamma_fn(double x);

/// Surface measure of the unit m-sphere, 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double sphere_area(int m);

}  // namespace hslab
