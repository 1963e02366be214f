#pragma once

#include <vector>

#include "hslab/params.hpp"
#include "hslab/radial.hpp"

namespace hslab {

/// One spherical-harmonic mode of the linearized operator around the
/// extremal profile: eigenproblem
///   phi'' + (N-1)/r phi' - mu_k/r^2 phi = -lambda rho phi,  phi(1) = 0,
/// with rho(r) = (2/(1-r^2))^s u(r)^{p-2} and mu_k = k(k+N-2).
struct ModeProblem {
  ProblemParams params;
  RadialProfile profile;
  int k = 0;
  double mu_k = 0.0;
  int n_grid = 800;
};

ModeProblem make_mode_problem(const ProblemParams& params,
                              const RadialProfile& profile, int k, int n_grid);

/// The spectral weight rho(r); positive on (0,1), rejects the endpoints.
double weight_fn(const ProblemParams& params, const RadialProfile& profile,
                 double r);

struct SpectrumReport {
  int k = 0;
  double mu_k = 0.0;
  int n_grid = 0;
  std::vector<double> eigenvalues;  // ascending, the lowest `count`
  std::vector<double> grid;         // interior nodes
  std::vector<double> eigenfunction_samples;  // lowest eigenfunction at nodes
};

/// Lowest `count` generalized eigenvalues by a P1 finite element
/// discretization in the measure r^{N-1} dr (symmetric tridiagonal pencil,
/// Sturm-sequence bisection, inverse iteration for the eigenfunction).
SpectrumReport mode_eigens(const ModeProblem& mode, int count);

/// Weighted L2 residual of the k=1 mode equation applied to
/// xi(r) = u'(r)(1-r^2) - (N-2) r u(r), relative to the zeroth-order term.
double xi_residual(const ProblemParams& params, const RadialProfile& profile);

struct NondegeneracyCertificate {
  bool certified = false;
  double lambda1_k0 = 0.0;   // expected 1
  double lambda2_k0 = 0.0;   // expected > p-1
  double lambda1_k1 = 0.0;   // expected p-1
  double margin_k2 = 0.0;    // lambda1(k=2) - (p-1), expected > 0
  int multiplicity = 0;      // N = dim of degree-1 spherical harmonics
  std::vector<double> lambda1_per_mode;  // k = 0..k_max
};

/// Aggregates mode_eigens over k = 0..k_max and certifies that the only
/// eigenvalues <= p-1 are 1 (k=0) and p-1 (k=1).
NondegeneracyCertificate nondegeneracy_certificate(const ProblemParams& params,
                                                   const RadialProfile& profile,
                                                   int k_max,
                                                   int n_grid = 800,
                                                   double tol = 1e-4);

}  // namespace hslab
