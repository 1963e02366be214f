#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hslab/fem2d.hpp"
#include "hslab/halfspace.hpp"
#include "hslab/params.hpp"
#include "hslab/planar.hpp"
#include "hslab/radial.hpp"
#include "hslab/spectral.hpp"

namespace py = pybind11;
using namespace hslab;

PYBIND11_MODULE(_hslab, m) {
  m.doc() = "half-space Hardy-Sobolev toolbox";

  py::enum_<Family>(m, "Family")
      .value("general", Family::general)
      .value("explicit_2_over_n", Family::explicit_2_over_n)
      .value("explicit_4_over_n", Family::explicit_4_over_n);

  py::class_<ProblemParams>(m, "ProblemParams")
      .def_readonly("dim", &ProblemParams::dim)
      .def_readonly("s", &ProblemParams::s)
      .def_readonly("p", &ProblemParams::p)
      .def_readonly("family", &ProblemParams::family)
      .def("__repr__", [](const ProblemParams& p) {
        std::ostringstream os;
        os << "ProblemParams(dim=" << p.dim << ", s=" << p.s << ", p=" << p.p
           << ")";
        return os.str();
      });

  m.def("params_from_s", &make_params_from_s, py::arg("dim"), py::arg("s"));
  m.def("params_from_p", &make_params_from_p, py::arg("dim"), py::arg("p"));
  m.def("family_params", &make_family_params, py::arg("dim"),
        py::arg("family"));

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_readonly("params", &RadialProfile::params)
      .def_readonly("grid", &RadialProfile::grid)
      .def_readonly("values", &RadialProfile::values)
      .def_readonly("derivs", &RadialProfile::derivs)
      .def_readonly("shoot_param", &RadialProfile::shoot_param)
      .def_readonly("boundary_slope", &RadialProfile::boundary_slope)
      .def_property_readonly("source", [](const RadialProfile& p) {
        return p.source == ProfileSource::closed_form ? "closed_form"
                                                      : "shooting";
      })
      .def("__call__", [](const RadialProfile& p, double r) {
        return evaluate_profile(p, r);
      });

  m.def(
      "closed_form_profile",
      [](const ProblemParams& p) { return closed_form_profile(p); },
      py::arg("params"));
  m.def(
      "shoot",
      [](const ProblemParams& p, double tol) { return shoot(p, tol); },
      py::arg("params"), py::arg("tol") = 1e-8);
  m.def("solve_profile", &solve_profile, py::arg("params"),
        py::arg("tol") = 1e-8);
  m.def("profile_residual", &profile_residual, py::arg("profile"));

  py::class_<MuReport>(m, "MuReport")
      .def_readonly("value", &MuReport::value)
      .def_readonly("energy_gradient", &MuReport::energy_gradient)
      .def_readonly("energy_weighted", &MuReport::energy_weighted)
      .def_readonly("dual_gap", &MuReport::dual_gap);
  m.def("mu_half_space", &mu_half_space, py::arg("params"), py::arg("profile"),
        py::arg("tol") = 1e-8);

  py::class_<PohozaevReport>(m, "PohozaevReport")
      .def_readonly("I1", &PohozaevReport::I1)
      .def_readonly("I2", &PohozaevReport::I2)
      .def_readonly("residual_main", &PohozaevReport::residual_main)
      .def_readonly("residual_tv1", &PohozaevReport::residual_tv1)
      .def_readonly("residual_shear", &PohozaevReport::residual_shear);
  m.def("pohozaev_report", &pohozaev_report, py::arg("params"),
        py::arg("profile"), py::arg("tol") = 1e-8);
  m.def("curvature_slope", &curvature_slope, py::arg("params"),
        py::arg("profile"), py::arg("tol") = 1e-8);

  py::class_<DiscriminantReport>(m, "DiscriminantReport")
      .def_readonly("I3", &DiscriminantReport::I3)
      .def_readonly("I4", &DiscriminantReport::I4)
      .def_readonly("const_coeff", &DiscriminantReport::const_coeff)
      .def_readonly("const_coeff_alt", &DiscriminantReport::const_coeff_alt)
      .def_readonly("lin_coeff", &DiscriminantReport::lin_coeff)
      .def_readonly("quad_coeff", &DiscriminantReport::quad_coeff)
      .def_readonly("D", &DiscriminantReport::D)
      .def_readonly("D_alt", &DiscriminantReport::D_alt)
      .def_readonly("A_star", &DiscriminantReport::A_star)
      .def_readonly("min_value", &DiscriminantReport::min_value)
      .def_readonly("attainable", &DiscriminantReport::attainable);
  m.def("discriminant_report", &discriminant_report, py::arg("params"),
        py::arg("tol") = 1e-8);
  m.def(
      "discriminant_closed_form",
      [](Family fam, int dim) -> py::object {
        const auto cf = discriminant_closed_form(fam, dim);
        if (!cf) return py::none();
        return py::make_tuple(cf->const_coeff, cf->D);
      },
      py::arg("family"), py::arg("dim"));

  py::class_<NondegeneracyCertificate>(m, "NondegeneracyCertificate")
      .def_readonly("certified", &NondegeneracyCertificate::certified)
      .def_readonly("lambda1_k0", &NondegeneracyCertificate::lambda1_k0)
      .def_readonly("lambda2_k0", &NondegeneracyCertificate::lambda2_k0)
      .def_readonly("lambda1_k1", &NondegeneracyCertificate::lambda1_k1)
      .def_readonly("margin_k2", &NondegeneracyCertificate::margin_k2)
      .def_readonly("multiplicity", &NondegeneracyCertificate::multiplicity)
      .def_readonly("lambda1_per_mode",
                    &NondegeneracyCertificate::lambda1_per_mode);
  m.def("nondegeneracy_certificate", &nondegeneracy_certificate,
        py::arg("params"), py::arg("profile"), py::arg("k_max") = 4,
        py::arg("n_grid") = 800, py::arg("tol") = 1e-4);

  m.def(
      "harmonic_radius",
      [](const std::string& domain, double x, double y, double height,
         double angle) {
        const Complex z(x, y);
        if (domain == "disk") return harmonic_radius(make_disk(), z);
        if (domain == "half_plane")
          return harmonic_radius(make_half_plane(), z);
        if (domain == "strip") return harmonic_radius(make_strip(height), z);
        if (domain == "sector") return harmonic_radius(make_sector(angle), z);
        throw std::invalid_argument("unknown domain: " + domain);
      },
      py::arg("domain"), py::arg("x"), py::arg("y"), py::arg("height") = 1.0,
      py::arg("angle") = M_PI / 2.0);

  py::class_<RefineRow>(m, "RefineRow")
      .def_readonly("h", &RefineRow::h)
      .def_readonly("mu_h", &RefineRow::mu_h);
  py::class_<FemSolution>(m, "FemSolution")
      .def_readonly("u", &FemSolution::u)
      .def_readonly("mu_h", &FemSolution::mu_h)
      .def_readonly("iterations", &FemSolution::iterations)
      .def_readonly("convergence_trace", &FemSolution::convergence_trace)
      .def_readonly("el_residual", &FemSolution::el_residual)
      .def_property_readonly("nodes",
                             [](const FemSolution& s) { return s.mesh.nodes; })
      .def_property_readonly(
          "triangles", [](const FemSolution& s) { return s.mesh.triangles; });
  m.def(
      "minimize_quotient",
      [](const std::string& domain, double p, double h, int resolution) {
        const auto dom = domain_gallery(domain, resolution);
        return minimize_quotient(dom, make_params_from_p(2, p), h);
      },
      py::arg("domain"), py::arg("p") = 3.0, py::arg("h") = 0.04,
      py::arg("resolution") = 256);
  m.def(
      "refine_study",
      [](const std::string& domain, double p, const std::vector<double>& hs,
         int resolution) {
        const auto dom = domain_gallery(domain, resolution);
        return refine_study(dom, make_params_from_p(2, p), hs);
      },
      py::arg("domain"), py::arg("p"), py::arg("h_list"),
      py::arg("resolution") = 256);
}
