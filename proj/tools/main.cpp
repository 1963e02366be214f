#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hslab/fem2d.hpp"
#include "hslab/halfspace.hpp"
#include "hslab/params.hpp"
#include "hslab/planar.hpp"
#include "hslab/radial.hpp"
#include "hslab/report_io.hpp"
#include "hslab/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSuiteFail = 1;
constexpr int kExitSolverFail = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitUsage = 64;

std::string out_path(const std::string& name) {
  if (name.empty() || name.front() == '/') return name;
  if (const char* dir = std::getenv("HSLAB_OUT")) {
    std::string d(dir);
    if (!d.empty() && d.back() != '/') d += '/';
    return d + name;
  }
  return name;
}

struct ParamFlags {
  int dim = 0;
  double s = -1.0, p = -1.0;
  std::string family;

  void attach(CLI::App* cmd) {
    cmd->add_option("--dim", dim, "space dimension N")->required();
    cmd->add_option("--s", s, "boundary-weight exponent");
    cmd->add_option("--p", p, "quotient exponent");
    cmd->add_option("--family", family, "2overN or 4overN")
        ->check(CLI::IsMember({"2overN", "4overN"}));
  }

  // throws std::invalid_argument on out-of-range input
  hslab::ProblemParams resolve() const {
    if (!family.empty()) {
      const hslab::Family f = family == "2overN"
                                  ? hslab::Family::explicit_2_over_n
                                  : hslab::Family::explicit_4_over_n;
      return hslab::make_family_params(dim, f);
    }
    if (s >= 0.0) return hslab::make_params_from_s(dim, s);
    if (p >= 0.0) return hslab::make_params_from_p(dim, p);
    throw std::invalid_argument("one of --s, --p, --family is required");
  }
};

void emit(const hslab::KeyValueDoc& doc, const std::string& file) {
  hslab::write_doc(std::cout, doc);
  if (!file.empty()) {
    std::ofstream os(out_path(file));
    hslab::write_doc(os, doc);
  }
}

struct Check {
  std::string name;
  double residual;
  double tolerance;
  bool ok;
};

int report_checks(hslab::KeyValueDoc& doc, const std::vector<Check>& checks,
                  const std::string& file) {
  std::string first_fail;
  for (const auto& c : checks) {
    doc.set_real("checks", c.name + ".residual", c.residual);
    doc.set_real("checks", c.name + ".tolerance", c.tolerance);
    doc.set("checks", c.name + ".pass", c.ok ? "yes" : "no");
    if (!c.ok && first_fail.empty()) first_fail = c.name;
  }
  doc.set("summary", "status", first_fail.empty() ? "pass" : "fail");
  if (!first_fail.empty()) doc.set("summary", "first_failure", first_fail);
  emit(doc, file);
  if (!first_fail.empty()) {
    std::cerr << "FAIL: " << first_fail << "\n";
    return kExitSuiteFail;
  }
  return kExitOk;
}

int cmd_solve_radial(const ParamFlags& pf, double tol,
                     const std::string& output) {
  const hslab::ProblemParams params = pf.resolve();
  hslab::RadialProfile prof;
  try {
    prof = hslab::solve_profile(params, tol);
  } catch (const std::runtime_error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFail;
  }
  const double res = hslab::profile_residual(prof);
  if (!output.empty()) {
    std::ofstream os(out_path(output));
    hslab::write_profile(os, prof);
  } else {
    hslab::write_profile(std::cout, prof);
  }
  hslab::KeyValueDoc doc;
  doc.set("profile", "dim", std::to_string(params.dim));
  doc.set_real("profile", "s", params.s);
  doc.set_real("profile", "p", params.p);
  doc.set("profile", "family", hslab::family_name(params.family));
  doc.set("profile", "source",
          prof.source == hslab::ProfileSource::closed_form ? "closed_form"
                                                           : "shooting");
  doc.set_real("profile", "center_value", prof.shoot_param);
  doc.set_real("profile", "boundary_slope", prof.boundary_slope);
  doc.set_real("profile", "first_integral_residual", res);
  hslab::write_doc(std::cout, doc);
  if (res >= tol && prof.source == hslab::ProfileSource::shooting) {
    std::cerr << "solver failure: residual " << hslab::format_real(res)
              << " exceeds tol\n";
    return kExitSolverFail;
  }
  return kExitOk;
}

int cmd_verify_pohozaev(const ParamFlags& pf, double tol,
                        const std::string& output) {
  const hslab::ProblemParams params = pf.resolve();
  const hslab::RadialProfile prof = hslab::solve_profile(params, tol * 1e-2);
  const hslab::PohozaevReport rep = hslab::pohozaev_report(params, prof, tol);
  const double slope = hslab::curvature_slope(params, prof, tol);
  const double target = params.s / ((params.dim - 1) * params.p) * rep.I2;

  hslab::KeyValueDoc doc;
  doc.set("params", "dim", std::to_string(params.dim));
  doc.set_real("params", "s", params.s);
  doc.set_real("params", "p", params.p);
  doc.set_real("identities", "I1", rep.I1);
  doc.set_real("identities", "I2", rep.I2);
  doc.set_real("identities", "curvature_slope", slope);
  return report_checks(
      doc,
      {{"pohozaev_main", rep.residual_main, tol, rep.residual_main < tol},
       {"total_variation", rep.residual_tv1, tol, rep.residual_tv1 < tol},
       {"shear", rep.residual_shear, tol, rep.residual_shear < tol},
       {"slope_identity", std::abs(slope - target) / std::abs(rep.I2), tol,
        std::abs(slope - target) < tol * std::abs(rep.I2)},
       {"slope_positive", -slope, 0.0, slope > 0.0}},
      output);
}

int cmd_verify_discriminant(const std::string& family_flag,
                            const std::string& scan, double tol,
                            const std::string& output) {
  const hslab::Family fam = family_flag == "2overN"
                                ? hslab::Family::explicit_2_over_n
                                : hslab::Family::explicit_4_over_n;
  int n_lo = 3, n_hi = 40;
  if (!scan.empty()) {
    const auto dots = scan.find("..");
    if (dots == std::string::npos)
      throw std::invalid_argument("--scan wants the form LO..HI");
    n_lo = std::stoi(scan.substr(0, dots));
    n_hi = std::stoi(scan.substr(dots + 2));
    if (n_lo < 3 || n_hi < n_lo)
      throw std::invalid_argument("--scan range must sit inside 3..");
  }

  hslab::KeyValueDoc doc;
  doc.set("params", "family", family_flag);
  doc.set("params", "scan", std::to_string(n_lo) + ".." + std::to_string(n_hi));
  std::vector<Check> checks;
  hslab::CsvTable table;
  table.header = {"N", "const_coeff", "D", "attainable"};
  for (int n = n_lo; n <= n_hi; ++n) {
    const auto cf = hslab::discriminant_closed_form(fam, n);
    if (!cf) continue;
    const bool expect_positive =
        fam == hslab::Family::explicit_2_over_n && n >= 18;
    table.add_row({static_cast<double>(n), cf->const_coeff, cf->D,
                   cf->D > 0.0 ? 1.0 : 0.0});
    checks.push_back({"sign_N" + std::to_string(n),
                      expect_positive ? -cf->D : cf->D, 0.0,
                      (cf->D > 0.0) == expect_positive});
    if (n == 18 && fam == hslab::Family::explicit_2_over_n)
      doc.set("summary", "threshold", "N=18 first positive discriminant");
  }
  // quadrature spot checks against the Gamma-function forms
  const std::vector<int> spots = fam == hslab::Family::explicit_2_over_n
                                     ? std::vector<int>{10, 17, 18, 30}
                                     : std::vector<int>{3, 5, 10};
  for (int n : spots) {
    if (n < n_lo || n > n_hi) continue;
    const auto params = hslab::make_family_params(n, fam);
    const auto rep = hslab::discriminant_report(params, tol);
    const auto cf = hslab::discriminant_closed_form(fam, n);
    const double rc = std::abs(rep.const_coeff - cf->const_coeff) /
                      std::abs(cf->const_coeff);
    const double rd = std::abs(rep.D - cf->D) / std::abs(cf->D);
    checks.push_back({"quad_const_N" + std::to_string(n), rc, tol, rc < tol});
    checks.push_back({"quad_D_N" + std::to_string(n), rd, tol, rd < tol});
  }
  std::ostringstream csv;
  hslab::write_csv(csv, table);
  std::cout << csv.str();
  if (!output.empty()) {
    std::ofstream os(out_path(output + ".csv"));
    os << csv.str();
  }
  return report_checks(doc, checks, output);
}

int cmd_verify_spectrum(const ParamFlags& pf, int kmax, int n_grid, double tol,
                        const std::string& output) {
  const hslab::ProblemParams params = pf.resolve();
  const hslab::RadialProfile prof = hslab::solve_profile(params, 1e-10);
  const auto cert =
      hslab::nondegeneracy_certificate(params, prof, kmax, n_grid, tol);

  hslab::KeyValueDoc doc;
  doc.set("params", "dim", std::to_string(params.dim));
  doc.set_real("params", "p", params.p);
  doc.set("params", "kmax", std::to_string(kmax));
  for (size_t k = 0; k < cert.lambda1_per_mode.size(); ++k)
    doc.set_real("lambda", "k" + std::to_string(k) + ".lowest",
                 cert.lambda1_per_mode[k]);
  doc.set_real("lambda", "k0.second", cert.lambda2_k0);
  doc.set("summary", "multiplicity", std::to_string(cert.multiplicity));
  const double pm1 = params.p - 1.0;
  return report_checks(
      doc,
      {{"lambda1_equals_1", std::abs(cert.lambda1_k0 - 1.0), tol,
        std::abs(cert.lambda1_k0 - 1.0) <= tol},
       {"lambda2_equals_p_minus_1", std::abs(cert.lambda1_k1 - pm1), tol,
        std::abs(cert.lambda1_k1 - pm1) <= tol},
       {"k2_margin_positive", -cert.margin_k2, 0.0, cert.margin_k2 > tol},
       {"certified", cert.certified ? 0.0 : 1.0, 0.5, cert.certified}},
      output);
}

int cmd_verify_planar(double tol, const std::string& output) {
  const auto hp = hslab::make_half_plane();
  const auto disk = hslab::make_disk();
  const auto strip = hslab::make_strip(1.0);
  hslab::KeyValueDoc doc;
  std::vector<Check> checks;

  const hslab::Complex z0(0.3, 0.7);
  const double r_hp = hslab::harmonic_radius(hp, z0);
  const double r_disk = hslab::harmonic_radius(disk, hslab::Complex(0.25, -0.1));
  const double r_strip = hslab::harmonic_radius(strip, hslab::Complex(2.0, 0.3));
  const double e_hp = std::abs(r_hp - 2.0 * 0.7);
  const double e_disk =
      std::abs(r_disk - (1.0 - std::norm(hslab::Complex(0.25, -0.1))));
  const double e_strip =
      std::abs(r_strip - 2.0 / M_PI * std::sin(M_PI * 0.3));
  checks.push_back({"radius_half_plane", e_hp, 1e-12, e_hp < 1e-12});
  checks.push_back({"radius_disk", e_disk, 1e-12, e_disk < 1e-12});
  checks.push_back({"radius_strip", e_strip, 1e-10, e_strip < 1e-10});

  const auto params = hslab::make_params_from_p(2, 3.0);
  const hslab::TestFunction2D bumps_hp[3] = {
      hslab::make_bump(0.0, 1.2, 0.8), hslab::make_bump(0.5, 0.9, 0.6),
      hslab::make_bump(-0.7, 2.0, 1.1)};
  const hslab::TestFunction2D bumps_strip[3] = {
      hslab::make_bump(0.0, 0.5, 0.35), hslab::make_bump(1.0, 0.4, 0.3),
      hslab::make_bump(-2.0, 0.6, 0.3)};
  for (int i = 0; i < 3; ++i) {
    const auto rep_hd = hslab::invariance_check(
        hp, disk, hslab::half_plane_to_disk(), bumps_hp[i], params, tol);
    const auto rep_sh = hslab::invariance_check(
        strip, hp, hslab::strip_to_half_plane(1.0), bumps_strip[i], params,
        tol);
    const std::string tag = std::to_string(i);
    checks.push_back({"invariance_hp_disk_energy_" + tag,
                      rep_hd.energy_residual, tol,
                      rep_hd.energy_residual < tol});
    checks.push_back({"invariance_hp_disk_weight_" + tag,
                      rep_hd.weighted_residual, tol,
                      rep_hd.weighted_residual < tol});
    checks.push_back({"invariance_strip_hp_energy_" + tag,
                      rep_sh.energy_residual, tol,
                      rep_sh.energy_residual < tol});
    checks.push_back({"invariance_strip_hp_weight_" + tag,
                      rep_sh.weighted_residual, tol,
                      rep_sh.weighted_residual < tol});
  }
  return report_checks(doc, checks, output);
}

int cmd_minimize(const std::string& domain_name, double p, double h,
                 const std::string& output) {
  hslab::PolygonDomain dom;
  try {
    dom = hslab::domain_gallery(domain_name, 256);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  const auto params = hslab::make_params_from_p(2, p);
  hslab::FemSolution sol;
  try {
    sol = hslab::minimize_quotient(dom, params, h);
  } catch (const std::runtime_error& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kExitNoConvergence;
  }
  const hslab::RadialProfile prof = hslab::solve_profile(params, 1e-10);
  const hslab::MuReport mu = hslab::mu_half_space(params, prof, 1e-8);

  const std::string sol_file =
      output.empty() ? domain_name + "_solution.txt" : output;
  {
    std::ofstream os(out_path(sol_file));
    hslab::write_solution(os, sol);
  }
  hslab::KeyValueDoc doc;
  doc.set("summary", "domain", domain_name);
  doc.set_real("summary", "p", p);
  doc.set_real("summary", "h", h);
  doc.set_real("summary", "mu_h", sol.mu_h);
  doc.set_real("summary", "mu_half_plane", mu.value);
  doc.set_real("summary", "gap", sol.mu_h - mu.value);
  doc.set("summary", "iterations", std::to_string(sol.iterations));
  doc.set_real("summary", "el_residual", sol.el_residual);
  doc.set("summary", "solution_file", sol_file);
  hslab::write_doc(std::cout, doc);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"half-space Hardy-Sobolev toolbox"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key = value config, flags override");
  int jobs = 1;
  app.add_option("--jobs", jobs, "internal parallelism (reserved)");

  ParamFlags pf_solve, pf_poh, pf_spec;
  double tol_solve = 1e-8, tol_poh = 1e-6, tol_disc = 1e-6, tol_spec = 1e-4,
         tol_planar = 1e-8;
  std::string out_solve, out_poh, out_disc, out_spec, out_planar, out_min;
  std::string disc_family = "2overN", disc_scan, min_domain;
  int kmax = 4, n_grid = 800;
  double min_p = 3.0, min_h = 0.02;

  auto* solve = app.add_subcommand("solve-radial", "shooting solve on the ball");
  pf_solve.attach(solve);
  solve->add_option("--tol", tol_solve, "solver tolerance");
  solve->add_option("-o,--output", out_solve, "profile output file");

  auto* verify = app.add_subcommand("verify", "identity suites");
  verify->require_subcommand(1);
  auto* poh = verify->add_subcommand("pohozaev", "boundary identities");
  pf_poh.attach(poh);
  poh->add_option("--tol", tol_poh, "residual tolerance");
  poh->add_option("-o,--output", out_poh, "report file");
  auto* disc = verify->add_subcommand("discriminant", "second-order quadratic");
  disc->add_option("--family", disc_family, "2overN or 4overN")
      ->check(CLI::IsMember({"2overN", "4overN"}));
  disc->add_option("--scan", disc_scan, "dimension range LO..HI");
  disc->add_option("--tol", tol_disc, "quadrature tolerance");
  disc->add_option("-o,--output", out_disc, "report file");
  auto* spec = verify->add_subcommand("spectrum", "linearized modes");
  pf_spec.attach(spec);
  spec->add_option("--kmax", kmax, "highest spherical mode");
  spec->add_option("--n-grid", n_grid, "radial elements");
  spec->add_option("--tol", tol_spec, "eigenvalue tolerance");
  spec->add_option("-o,--output", out_spec, "report file");
  auto* planar = verify->add_subcommand("planar", "conformal invariance");
  planar->add_option("--tol", tol_planar, "residual tolerance");
  planar->add_option("-o,--output", out_planar, "report file");

  auto* minimize = app.add_subcommand("minimize", "planar quotient experiment");
  minimize->set_help_flag("--help", "print help");
  minimize->add_option("--domain", min_domain, "gallery domain")->required();
  minimize->add_option("--p", min_p, "exponent p > 2");
  minimize->add_option("--h", min_h, "target mesh size");
  minimize->add_option("-o,--output", out_min, "solution file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve_radial(pf_solve, tol_solve, out_solve);
    if (poh->parsed()) return cmd_verify_pohozaev(pf_poh, tol_poh, out_poh);
    if (disc->parsed())
      return cmd_verify_discriminant(disc_family, disc_scan, tol_disc,
                                     out_disc);
    if (spec->parsed())
      return cmd_verify_spectrum(pf_spec, kmax, n_grid, tol_spec, out_spec);
    if (planar->parsed()) return cmd_verify_planar(tol_planar, out_planar);
    if (minimize->parsed())
      return cmd_minimize(min_domain, min_p, min_h, out_min);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverFail;
  }
  return kExitUsage;
}
