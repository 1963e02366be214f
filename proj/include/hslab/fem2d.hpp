#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "hslab/params.hpp"

namespace hslab {

using Point2 = std::array<double, 2>;

/// Simple counterclockwise polygon, optionally sampled from a smooth
/// parametric curve (recorded by name for provenance).
struct PolygonDomain {
  std::vector<Point2> vertices;
  std::string smooth_source;  // empty when the polygon is the exact shape
};

/// Gallery shapes: "disk" (regular polygon in the unit circle), "square"
/// ([0,1]^2), "kidney" (polar curve 1 - 0.6 exp(-8 (t-pi)^2/pi^2), which
/// has a boundary arc of negative curvature).
PolygonDomain domain_gallery(const std::string& name, int resolution);

/// Signed curvature of the kidney source curve at polar angle theta.
double kidney_signed_curvature(double theta);

double polygon_signed_area(const PolygonDomain& domain);
bool polygon_convex(const PolygonDomain& domain);
bool polygon_contains(const PolygonDomain& domain, const Point2& p);

/// Exact Euclidean distance from an interior point to the polygon.
double distance_to_boundary(const PolygonDomain& domain, const Point2& p);

struct TriangleMesh {
  std::vector<Point2> nodes;
  std::vector<std::array<int, 3>> triangles;  // positively oriented
  std::vector<bool> boundary_node;
  double h = 0.0;  // target size used to build it
};

/// Delaunay mesh of the polygon: boundary nodes at spacing <= h/2 along
/// the edges, interior nodes on a hexagonal lattice of spacing h.
TriangleMesh build_mesh(const PolygonDomain& domain, double h);

/// Uniform midpoint refinement; nested with the parent (polygon edges are
/// straight, so boundary midpoints stay on the boundary).
TriangleMesh refine_mesh(const TriangleMesh& mesh);

struct MinimizeOptions {
  double tol = 1e-10;       // relative quotient decrease to stop at
  int max_iterations = 400;
  int quad_order = 8;       // tensor order of the graded boundary rules
};

struct FemSolution {
  TriangleMesh mesh;
  std::vector<double> u;    // nodal values, zero on boundary nodes
  double mu_h = 0.0;        // Dirichlet energy at the normalized minimizer
  int iterations = 0;
  std::vector<double> convergence_trace;
  double el_residual = 0.0;  // dual-norm Euler-Lagrange residual
};

/// Minimizes the discrete Hardy-Sobolev quotient by damped inverse
/// iteration u <- (-Delta_h)^{-1}(delta^{-s} u^{p-1}) with normalization
/// \int delta^{-s} |u|^p = 1.
FemSolution minimize_on_mesh(const PolygonDomain& domain,
                             const ProblemParams& params,
                             const TriangleMesh& mesh,
                             const MinimizeOptions& opts = {});

FemSolution minimize_quotient(const PolygonDomain& domain,
                              const ProblemParams& params, double h,
                              const MinimizeOptions& opts = {});

struct RefineRow {
  double h = 0.0;
  double mu_h = 0.0;
};

/// Builds the mesh at h_list.front() and refines uniformly through the
/// list; nesting makes mu_h monotone non-increasing.
std::vector<RefineRow> refine_study(const PolygonDomain& domain,
                                    const ProblemParams& params,
                                    const std::vector<double>& h_list,
                                    const MinimizeOptions& opts = {});

/// Plain-text dump: node table, element table, nodal values, trace.
void write_solution(std::ostream& os, const FemSolution& sol);

}  // namespace hslab
