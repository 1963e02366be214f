#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hslab/params.hpp"
#include "hslab/quadrature.hpp"
#include "hslab/radial.hpp"
#include "hslab/spectral.hpp"

using namespace hslab;

namespace {

double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return std::abs(ab) / std::sqrt(aa * bb);
}

}  // namespace

TEST_CASE("spectral weight values and integrability") {
  const auto params = make_family_params(3, Family::explicit_2_over_n);
  const auto prof = *closed_form_profile(params);

  const double at0 = weight_fn(params, prof, 1e-12);
  const double expect =
      std::pow(2.0, params.s) * std::pow(prof.shoot_param, params.p - 2.0);
  CHECK(at0 == doctest::Approx(expect).epsilon(1e-8));

  CHECK_THROWS(weight_fn(params, prof, 0.0));
  CHECK_THROWS(weight_fn(params, prof, 1.0));

  for (int i = 1; i < 1000; ++i)
    CHECK(weight_fn(params, prof, i / 1000.0) > 0.0);

  // rho alone diverges like (1-r)^{p-2-s}, but rho u^2 r^{N-1} (the form
  // the eigenproblem actually integrates) stays integrable through r = 1
  auto g = [&](double r) {
    const double u = evaluate_profile(prof, r).first;
    return weight_fn(params, prof, r) * u * u * std::pow(r, params.dim - 1.0);
  };
  const double total = integrate_1d(g, 1e-8, 1.0 - 1e-12, 1e-9).value;
  const double tail = integrate_1d(g, 0.999, 1.0 - 1e-12, 1e-9).value;
  CHECK(tail < 1e-2 * total);
}

TEST_CASE("lowest modes of the linearized operator") {
  const auto params = make_family_params(3, Family::explicit_2_over_n);
  const auto prof = *closed_form_profile(params);

  const auto k0 = mode_eigens(make_mode_problem(params, prof, 0, 800), 2);
  CHECK(std::abs(k0.eigenvalues[0] - 1.0) < 1e-4);
  CHECK(k0.eigenvalues[1] > params.p - 1.0);

  std::vector<double> u_samples;
  for (double r : k0.grid) u_samples.push_back(evaluate_profile(prof, r).first);
  CHECK(cosine_similarity(k0.eigenfunction_samples, u_samples) > 0.9999);

  const auto k1 = mode_eigens(make_mode_problem(params, prof, 1, 800), 2);
  CHECK(std::abs(k1.eigenvalues[0] - (params.p - 1.0)) < 1e-4);
  std::vector<double> xi_samples;
  for (double r : k1.grid) {
    const auto [u, du] = evaluate_profile(prof, r);
    xi_samples.push_back(du * (1.0 - r * r) - (params.dim - 2.0) * r * u);
  }
  CHECK(cosine_similarity(k1.eigenfunction_samples, xi_samples) > 0.9999);

  const auto k2 = mode_eigens(make_mode_problem(params, prof, 2, 800), 1);
  CHECK(k2.eigenvalues[0] > params.p - 1.0 + 1e-3);
}

TEST_CASE("eigenvalue lists are ordered and eigenfunctions sturm-clean") {
  const auto params = make_family_params(4, Family::explicit_4_over_n);
  const auto prof = *closed_form_profile(params);
  for (int k : {0, 1, 2}) {
    const auto rep = mode_eigens(make_mode_problem(params, prof, k, 600), 3);
    for (size_t i = 1; i < rep.eigenvalues.size(); ++i)
      CHECK(rep.eigenvalues[i] > rep.eigenvalues[i - 1]);
    // lowest eigenfunction: no interior sign change (ignoring the
    // inverse-iteration noise floor near the endpoints)
    double amp = 0.0;
    for (double v : rep.eigenfunction_samples) amp = std::max(amp, std::abs(v));
    int changes = 0;
    double prev = 0.0;
    for (double v : rep.eigenfunction_samples) {
      if (std::abs(v) < 1e-7 * amp) continue;
      if (prev != 0.0 && v * prev < 0.0) ++changes;
      prev = v;
    }
    CHECK(changes == 0);
  }
}

TEST_CASE("grid refinement moves the lowest eigenvalue below 1e-5") {
  const auto params = make_family_params(3, Family::explicit_2_over_n);
  const auto prof = *closed_form_profile(params);
  for (int k : {0, 1}) {
    const auto coarse = mode_eigens(make_mode_problem(params, prof, k, 400), 1);
    const auto fine = mode_eigens(make_mode_problem(params, prof, k, 800), 1);
    CHECK(std::abs(coarse.eigenvalues[0] - fine.eigenvalues[0]) < 1e-5);
  }
}

TEST_CASE("mode monotonicity in k") {
  const auto params = make_family_params(3, Family::explicit_2_over_n);
  const auto prof = *closed_form_profile(params);
  double prev = -1.0;
  for (int k = 0; k <= 4; ++k) {
    const auto rep = mode_eigens(make_mode_problem(params, prof, k, 500), 1);
    CHECK(rep.eigenvalues[0] > prev);
    prev = rep.eigenvalues[0];
  }
}

TEST_CASE("xi solves the k=1 mode equation") {
  const auto p3 = make_family_params(3, Family::explicit_2_over_n);
  CHECK(xi_residual(p3, *closed_form_profile(p3)) < 1e-6);
  const auto p4 = make_family_params(4, Family::explicit_4_over_n);
  CHECK(xi_residual(p4, *closed_form_profile(p4)) < 1e-6);

  const auto ps = make_params_from_s(3, 1.0);
  CHECK(xi_residual(ps, shoot(ps, 1e-10)) < 1e-3);
}

TEST_CASE("non-degeneracy certificates") {
  struct Row {
    int dim;
    Family fam;
  };
  for (const Row& row : {Row{3, Family::explicit_2_over_n},
                         Row{4, Family::explicit_4_over_n},
                         Row{2, Family::explicit_2_over_n}}) {
    const auto params = make_family_params(row.dim, row.fam);
    const auto prof = *closed_form_profile(params);
    const auto cert = nondegeneracy_certificate(params, prof, 4, 800, 1e-4);
    CHECK(cert.certified);
    CHECK(cert.multiplicity == row.dim);
    CHECK(std::abs(cert.lambda1_k0 - 1.0) < 1e-4);
    CHECK(std::abs(cert.lambda1_k1 - (params.p - 1.0)) < 1e-4);
    CHECK(cert.lambda2_k0 > params.p - 1.0);
    CHECK(cert.margin_k2 > 0.0);
    REQUIRE(cert.lambda1_per_mode.size() == 5);
  }
}
