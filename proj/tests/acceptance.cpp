// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "hslab/fem2d.hpp"
#include "hslab/halfspace.hpp"
#include "hslab/params.hpp"
#include "hslab/planar.hpp"
#include "hslab/radial.hpp"
#include "hslab/spectral.hpp"

using namespace hslab;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s — %s\n", id, ok ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

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

void criterion1() {
  bool ok = true;
  double worst = 0.0, worst_time = 0.0;
  for (int n : {2, 3, 4, 5, 10}) {
    for (Family fam : {Family::explicit_2_over_n, Family::explicit_4_over_n}) {
      const auto params = make_family_params(n, fam);
      const auto cf = closed_form_profile(params);
      const auto t0 = std::chrono::steady_clock::now();
      const RadialProfile sh = shoot(params, 1e-8);
      const double dt = seconds_since(t0);
      double err = 0.0;
      for (int i = 0; i <= 2000; ++i) {
        const double r = i / 2000.0;
        err = std::max(err, std::abs(evaluate_profile(sh, r).first -
                                     evaluate_profile(*cf, r).first));
      }
      worst = std::max(worst, err);
      worst_time = std::max(worst_time, dt);
      if (err > 1e-7 || dt > 10.0) ok = false;
    }
  }
  report(1, ok,
         "shooting vs closed forms, N in {2,3,4,5,10}, both families: "
         "max-norm " +
             fmt(worst) + " (<= 1e-7), slowest case " + fmt(worst_time) + " s");
}

void criterion2_and_3() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok2 = true, ok3 = true;
  double worst2 = 0.0, worst3 = 0.0;

  std::vector<ProblemParams> explicit_cases, shooting_cases;
  for (int n = 2; n <= 10; ++n) {
    explicit_cases.push_back(make_family_params(n, Family::explicit_2_over_n));
    explicit_cases.push_back(make_family_params(n, Family::explicit_4_over_n));
  }
  shooting_cases.push_back(make_params_from_s(3, 0.5));
  shooting_cases.push_back(make_params_from_s(3, 1.0));
  shooting_cases.push_back(make_params_from_s(3, 1.5));
  shooting_cases.push_back(make_params_from_s(4, 1.0));
  shooting_cases.push_back(make_params_from_p(2, 5.0));

  auto run = [&](const ProblemParams& params, double tol) {
    const RadialProfile prof = solve_profile(params, tol * 1e-2);
    const auto rep = pohozaev_report(params, prof, tol);
    const double r =
        std::max({rep.residual_main, rep.residual_tv1, rep.residual_shear});
    worst2 = std::max(worst2, r);
    if (r >= tol) ok2 = false;

    const double slope = curvature_slope(params, prof, tol);
    const double target = params.s / ((params.dim - 1) * params.p) * rep.I2;
    const double rel = std::abs(slope - target) / std::abs(rep.I2);
    worst3 = std::max(worst3, rel);
    if (rel >= 1e-6 || slope <= 0.0) ok3 = false;
  };
  for (const auto& params : explicit_cases) run(params, 1e-6);
  for (const auto& params : shooting_cases) run(params, 1e-4);

  const double dt = seconds_since(t0);
  if (dt > 60.0) ok2 = false;
  report(2, ok2,
         "Pohozaev residuals: worst " + fmt(worst2) +
             " over 18 explicit (< 1e-6) and 5 shooting (< 1e-4) cases, " +
             fmt(dt) + " s (<= 60)");
  report(3, ok3,
         "curvature slope I1 + (2/p) I2 = s/((N-1)p) I2 and > 0 on all 23 "
             "cases, worst relative deviation " +
             fmt(worst3));
}

void criterion4(bool* out_ok) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (int n = 3; n <= 40; ++n) {
    const auto c2 = discriminant_closed_form(Family::explicit_2_over_n, n);
    const auto c4 = discriminant_closed_form(Family::explicit_4_over_n, n);
    if (!c2 || !c4) {
      ok = false;
      continue;
    }
    if ((n <= 17 && c2->D >= 0.0) || (n >= 18 && c2->D <= 0.0)) ok = false;
    if (c4->D >= 0.0) ok = false;
  }
  double worst = 0.0;
  auto spot = [&](Family fam, int n) {
    const auto rep = discriminant_report(make_family_params(n, fam), 1e-8);
    const auto cf = discriminant_closed_form(fam, n);
    const double rc =
        std::abs(rep.const_coeff - cf->const_coeff) / std::abs(cf->const_coeff);
    const double rd = std::abs(rep.D - cf->D) / std::abs(cf->D);
    worst = std::max({worst, rc, rd});
    if (rc > 1e-6 || rd > 1e-6) ok = false;
  };
  for (int n : {10, 17, 18, 30}) spot(Family::explicit_2_over_n, n);
  for (int n : {3, 5, 10}) spot(Family::explicit_4_over_n, n);
  const double dt = seconds_since(t0);
  if (dt > 120.0) ok = false;
  report(4, ok,
         "discriminant signs (2/N: negative through N=17, positive 18..40; "
         "4/N: negative 3..40) and quadrature vs Gamma forms, worst relative " +
             fmt(worst) + " (<= 1e-6), " + fmt(dt) + " s (<= 120)");
  *out_ok = ok;
}

void criterion5(bool* out_ok) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst_lam = 0.0, worst_cos = 1.0, min_margin = 1e300;
  for (int n : {2, 3, 4}) {
    for (Family fam : {Family::explicit_2_over_n, Family::explicit_4_over_n}) {
      const auto params = make_family_params(n, fam);
      const auto prof = *closed_form_profile(params);
      const auto cert = nondegeneracy_certificate(params, prof, 4, 800, 1e-4);
      worst_lam = std::max({worst_lam, std::abs(cert.lambda1_k0 - 1.0),
                            std::abs(cert.lambda1_k1 - (params.p - 1.0))});
      min_margin = std::min(min_margin, cert.margin_k2);
      if (!cert.certified || std::abs(cert.lambda1_k0 - 1.0) > 1e-4 ||
          std::abs(cert.lambda1_k1 - (params.p - 1.0)) > 1e-4 ||
          cert.margin_k2 <= 0.0)
        ok = false;

      const auto k1 = mode_eigens(make_mode_problem(params, prof, 1, 800), 1);
      std::vector<double> xi;
      for (double r : k1.grid) {
        const auto [u, du] = evaluate_profile(prof, r);
        xi.push_back(du * (1.0 - r * r) - (params.dim - 2.0) * r * u);
      }
      const double cs = cosine_similarity(k1.eigenfunction_samples, xi);
      worst_cos = std::min(worst_cos, cs);
      if (cs <= 0.999) ok = false;
    }
  }
  const double dt = seconds_since(t0);
  if (dt > 60.0) ok = false;
  report(5, ok,
         "linearized modes at N in {2,3,4}, both families, n_grid 800: "
         "|lambda - {1, p-1}| <= " +
             fmt(worst_lam) + ", xi cosine similarity >= " + fmt(worst_cos) +
             ", k=2 margin >= " + fmt(min_margin) + ", " + fmt(dt) +
             " s (<= 60)");
  *out_ok = ok;
}

void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst_inv = 0.0;
  const auto hp = make_half_plane();
  const auto disk = make_disk();
  const auto strip = make_strip(1.0);
  const auto params = make_params_from_p(2, 3.0);
  const TestFunction2D bumps_hp[3] = {make_bump(0.0, 1.2, 0.8),
                                      make_bump(0.5, 0.9, 0.6),
                                      make_bump(-0.7, 2.0, 1.1)};
  const TestFunction2D bumps_strip[3] = {make_bump(0.0, 0.5, 0.35),
                                         make_bump(1.0, 0.4, 0.3),
                                         make_bump(-2.0, 0.6, 0.3)};
  for (int i = 0; i < 3; ++i) {
    const auto a = invariance_check(hp, disk, half_plane_to_disk(), bumps_hp[i],
                                    params, 1e-9);
    const auto b = invariance_check(strip, hp, strip_to_half_plane(1.0),
                                    bumps_strip[i], params, 1e-9);
    worst_inv = std::max({worst_inv, a.energy_residual, a.weighted_residual,
                          b.energy_residual, b.weighted_residual});
  }
  if (worst_inv >= 1e-8) ok = false;

  double worst_exact = 0.0, worst_strip = 0.0;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u01(0.02, 0.98);
  for (int i = 0; i < 200; ++i) {
    const double rho = u01(rng);
    const double th = 2.0 * M_PI * u01(rng);
    const Complex zd(rho * std::cos(th), rho * std::sin(th));
    worst_exact = std::max(
        worst_exact, std::abs(harmonic_radius(disk, zd) - (1.0 - std::norm(zd))));
    const Complex zh(4.0 * u01(rng) - 2.0, 3.0 * u01(rng));
    worst_exact = std::max(
        worst_exact, std::abs(harmonic_radius(hp, zh) - 2.0 * zh.imag()));
    const Complex zs(4.0 * u01(rng) - 2.0, u01(rng));
    worst_strip = std::max(
        worst_strip, std::abs(harmonic_radius(strip, zs) -
                              2.0 / M_PI * std::sin(M_PI * zs.imag())));
  }
  if (worst_exact > 1e-12 || worst_strip > 1e-10) ok = false;
  const double dt = seconds_since(t0);
  if (dt > 10.0) ok = false;
  report(6, ok,
         "conformal transports (6 checks) residual " + fmt(worst_inv) +
             " (< 1e-8); radius closed forms off by " + fmt(worst_exact) +
             " (disk/half-plane, <= 1e-12) and " + fmt(worst_strip) +
             " (strip, <= 1e-10), " + fmt(dt) + " s (<= 10)");
}

void criterion7() {
  bool ok = true;
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  auto samples_for = [&](const std::string& which) {
    std::vector<Complex> pts;
    for (int i = 0; i < 200; ++i) {
      if (which == "disk") {
        const double rho = 0.98 * std::sqrt(u01(rng));
        const double th = 2.0 * M_PI * u01(rng);
        pts.emplace_back(rho * std::cos(th), rho * std::sin(th));
      } else if (which == "half_plane") {
        pts.emplace_back(4.0 * u01(rng) - 2.0, 3.0 * u01(rng) + 0.01);
      } else if (which == "strip") {
        pts.emplace_back(6.0 * u01(rng) - 3.0, 0.98 * u01(rng) + 0.01);
      } else {  // quarter-plane sector
        const double th = 0.5 * M_PI * (0.05 + 0.9 * u01(rng));
        const double rho = 0.05 + 2.0 * u01(rng);
        pts.emplace_back(rho * std::cos(th), rho * std::sin(th));
      }
    }
    return pts;
  };

  const auto rep_disk = radius_bounds_check(make_disk(), samples_for("disk"));
  const auto rep_hp =
      radius_bounds_check(make_half_plane(), samples_for("half_plane"));
  const auto rep_strip =
      radius_bounds_check(make_strip(1.0), samples_for("strip"));
  const auto rep_sec =
      radius_bounds_check(make_sector(0.5 * M_PI), samples_for("sector"));

  for (const auto& rep : {rep_disk, rep_hp, rep_strip, rep_sec})
    if (!rep.lower_ok || !rep.upper_ok) ok = false;
  // ratio 2 is attained identically on the half-plane and nowhere else
  if (std::abs(rep_hp.min_r_over_delta - 2.0) > 1e-12 ||
      std::abs(rep_hp.max_r_over_delta - 2.0) > 1e-12)
    ok = false;
  for (const auto& rep : {rep_disk, rep_strip, rep_sec})
    if (rep.max_r_over_delta >= 2.0 - 1e-9) ok = false;
  report(7, ok,
         "delta <= r <= 2 delta on 200 samples per convex domain; r/delta = 2 "
         "identically on the half-plane only (others max " +
             fmt(std::max({rep_disk.max_r_over_delta, rep_strip.max_r_over_delta,
                           rep_sec.max_r_over_delta})) +
             ")");
}

void criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string note;

  const auto params = make_params_from_p(2, 3.0);
  const auto prof = solve_profile(params, 1e-10);
  const auto mu = mu_half_space(params, prof, 1e-8);
  if (mu.dual_gap >= 1e-6) ok = false;
  const double mu3 = mu.value;

  const std::vector<double> base = {0.08, 0.04, 0.02};
  for (const std::string& name : {"square", "disk"}) {
    const auto dom = domain_gallery(name, 256);
    const auto rows = refine_study(dom, params, base);
    for (size_t i = 1; i < rows.size(); ++i)
      if (rows[i].mu_h >= rows[i - 1].mu_h) ok = false;
    for (const auto& row : rows)
      if (row.mu_h < mu3 - 1e-8) ok = false;
    note += name + " " + fmt(rows.back().mu_h) + " >= mu3; ";
  }

  // kidney: keep refining nested meshes until the extrapolated
  // discretization error separates mu_h from mu3 by three error widths
  const auto kidney = domain_gallery("kidney", 256);
  const auto rows =
      refine_study(kidney, params, {0.08, 0.04, 0.02, 0.01, 0.005});
  for (size_t i = 1; i < 3; ++i)
    if (rows[i].mu_h >= rows[i - 1].mu_h) ok = false;
  const size_t k = rows.size() - 1;
  const double d_prev = rows[k - 2].mu_h - rows[k - 1].mu_h;
  const double d_last = rows[k - 1].mu_h - rows[k].mu_h;
  const double ratio = d_last / d_prev;
  const double err = (ratio < 1.0) ? d_last * ratio / (1.0 - ratio) : 1e300;
  const bool gap_ok = rows[k].mu_h < mu3 - 3.0 * err;
  if (!gap_ok) ok = false;
  note += "kidney " + fmt(rows[k].mu_h) + " < mu3 - 3*" + fmt(err) + " = " +
          fmt(mu3 - 3.0 * err);

  const double dt = seconds_since(t0);
  if (dt > 600.0) ok = false;
  report(8, ok,
         "p=3 refinement monotone on {0.08,0.04,0.02}; mu3 = " + fmt(mu3) +
             " (dual gap " + fmt(mu.dual_gap) + "); " + note + ", " + fmt(dt) +
             " s (<= 600)");
}

}  // namespace

int main() {
  criterion1();
  criterion2_and_3();
  bool ok4 = false, ok5 = false;
  criterion4(&ok4);
  criterion5(&ok5);
  criterion6();
  criterion7();
  criterion8();
  report(9, ok4 && ok5,
         "large-N threshold and blow-up machinery are covered by the "
         "closed-form/quadrature identities of criterion 4 and the "
         "non-degeneracy certificate of criterion 5 (stated substitute)");
  if (failures != 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
