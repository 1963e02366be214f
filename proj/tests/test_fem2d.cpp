#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hslab/fem2d.hpp"
#include "hslab/halfspace.hpp"
#include "hslab/params.hpp"
#include "hslab/radial.hpp"

using namespace hslab;

namespace {

double tri_min_angle(const TriangleMesh& m) {
  double worst = M_PI;
  for (const auto& t : m.triangles) {
    for (int k = 0; k < 3; ++k) {
      const Point2& a = m.nodes[t[k]];
      const Point2& b = m.nodes[t[(k + 1) % 3]];
      const Point2& c = m.nodes[t[(k + 2) % 3]];
      const double ux = b[0] - a[0], uy = b[1] - a[1];
      const double vx = c[0] - a[0], vy = c[1] - a[1];
      const double dot = ux * vx + uy * vy;
      const double det = ux * vy - uy * vx;
      worst = std::min(worst, std::atan2(std::abs(det), dot));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("domain gallery shapes") {
  const auto disk = domain_gallery("disk", 64);
  CHECK(disk.vertices.size() == 64);
  CHECK(polygon_convex(disk));
  CHECK(polygon_signed_area(disk) > 0.0);

  const auto square = domain_gallery("square", 32);
  CHECK(square.vertices.size() == 4);
  CHECK(polygon_convex(square));
  CHECK(polygon_signed_area(square) == doctest::Approx(1.0).epsilon(1e-15));

  const auto kidney = domain_gallery("kidney", 256);
  CHECK(kidney.vertices.size() == 256);
  CHECK(!polygon_convex(kidney));
  CHECK(polygon_signed_area(kidney) > 0.0);

  CHECK_THROWS(domain_gallery("hexagon", 64));
  CHECK_THROWS(domain_gallery("disk", 16));
}

TEST_CASE("kidney curve has a genuinely negative curvature arc") {
  double cmin = 1e300, cmax = -1e300;
  for (int i = 0; i <= 1000; ++i) {
    const double th = 2.0 * M_PI * i / 1000.0;
    const double c = kidney_signed_curvature(th);
    cmin = std::min(cmin, c);
    cmax = std::max(cmax, c);
  }
  CHECK(cmin < -0.1);
  CHECK(cmax > 0.0);
  // reflex vertices show up in the sampled polygon too
  const auto kidney = domain_gallery("kidney", 256);
  const auto& v = kidney.vertices;
  int reflex = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    const auto& c = v[(i + 2) % v.size()];
    const double cr =
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    if (cr < 0.0) ++reflex;
  }
  CHECK(reflex >= 3);
}

TEST_CASE("point membership and boundary distance") {
  const auto square = domain_gallery("square", 32);
  CHECK(polygon_contains(square, {0.5, 0.5}));
  CHECK(!polygon_contains(square, {1.5, 0.5}));
  CHECK(distance_to_boundary(square, {0.3, 0.4}) ==
        doctest::Approx(0.3).epsilon(1e-14));
  CHECK(distance_to_boundary(square, {0.5, 0.5}) ==
        doctest::Approx(0.5).epsilon(1e-14));

  const auto disk = domain_gallery("disk", 256);
  const double d = distance_to_boundary(disk, {0.25, 0.0});
  CHECK(d == doctest::Approx(0.75).epsilon(1e-3));
}

TEST_CASE("mesh construction invariants") {
  const auto square = domain_gallery("square", 32);
  const auto mesh = build_mesh(square, 0.1);
  CHECK(mesh.nodes.size() > 50);
  CHECK(mesh.triangles.size() > 50);
  CHECK(tri_min_angle(mesh) > 10.0 * M_PI / 180.0);

  // positive orientation everywhere
  for (const auto& t : mesh.triangles) {
    const Point2& a = mesh.nodes[t[0]];
    const Point2& b = mesh.nodes[t[1]];
    const Point2& c = mesh.nodes[t[2]];
    CHECK((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) > 0.0);
  }

  // conforming: every interior edge shared by exactly two triangles,
  // boundary edges by one, and their endpoints carry the boundary flag
  std::map<std::pair<int, int>, int> edges;
  for (const auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      const int u = t[k], v = t[(k + 1) % 3];
      edges[{std::min(u, v), std::max(u, v)}]++;
    }
  double area = 0.0;
  for (const auto& t : mesh.triangles) {
    const Point2& a = mesh.nodes[t[0]];
    const Point2& b = mesh.nodes[t[1]];
    const Point2& c = mesh.nodes[t[2]];
    area += 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
  }
  CHECK(area == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& [e, cnt] : edges) {
    CHECK(cnt >= 1);
    CHECK(cnt <= 2);
    if (cnt == 1) {
      CHECK(mesh.boundary_node[e.first]);
      CHECK(mesh.boundary_node[e.second]);
    }
  }
}

TEST_CASE("refinement is nested and quarters the elements") {
  const auto square = domain_gallery("square", 32);
  const auto coarse = build_mesh(square, 0.2);
  const auto fine = refine_mesh(coarse);
  CHECK(fine.triangles.size() == 4 * coarse.triangles.size());
  REQUIRE(fine.nodes.size() >= coarse.nodes.size());
  for (size_t i = 0; i < coarse.nodes.size(); ++i) {
    CHECK(fine.nodes[i][0] == coarse.nodes[i][0]);
    CHECK(fine.nodes[i][1] == coarse.nodes[i][1]);
    CHECK(fine.boundary_node[i] == coarse.boundary_node[i]);
  }
}

TEST_CASE("quotient minimization on the unit square") {
  const auto square = domain_gallery("square", 32);
  const auto params = make_params_from_p(2, 3.0);
  const auto sol = minimize_quotient(square, params, 0.08);
  CHECK(sol.mu_h > 0.0);
  CHECK(sol.iterations > 0);
  CHECK(sol.el_residual < 1e-3);

  // trace non-increasing, nodal values nonnegative, boundary clamped
  for (size_t i = 1; i < sol.convergence_trace.size(); ++i)
    CHECK(sol.convergence_trace[i] <= sol.convergence_trace[i - 1] * (1.0 + 1e-12));
  for (size_t i = 0; i < sol.u.size(); ++i) {
    CHECK(sol.u[i] >= 0.0);
    if (sol.mesh.boundary_node[i]) CHECK(sol.u[i] == 0.0);
  }

  // mu_h equals the Dirichlet energy of u (independent reassembly)
  double energy = 0.0;
  for (const auto& t : sol.mesh.triangles) {
    const Point2& a = sol.mesh.nodes[t[0]];
    const Point2& b = sol.mesh.nodes[t[1]];
    const Point2& c = sol.mesh.nodes[t[2]];
    const double det =
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    double gx[3], gy[3];
    const Point2 pts[3] = {a, b, c};
    for (int k = 0; k < 3; ++k) {
      const Point2& q = pts[(k + 1) % 3];
      const Point2& r = pts[(k + 2) % 3];
      gx[k] = (q[1] - r[1]) / det;
      gy[k] = (r[0] - q[0]) / det;
    }
    double ex = 0.0, ey = 0.0;
    for (int k = 0; k < 3; ++k) {
      ex += sol.u[t[k]] * gx[k];
      ey += sol.u[t[k]] * gy[k];
    }
    energy += 0.5 * det * (ex * ex + ey * ey);
  }
  CHECK(energy == doctest::Approx(sol.mu_h).epsilon(1e-10));
}

TEST_CASE("convex domains stay above the half-plane constant") {
  const auto params = make_params_from_p(2, 3.0);
  const auto prof = solve_profile(params, 1e-10);
  const double mu3 = mu_half_space(params, prof, 1e-8).value;

  const auto square = domain_gallery("square", 32);
  const auto rows = refine_study(square, params, {0.08, 0.04});
  CHECK(rows[1].mu_h < rows[0].mu_h);
  for (const auto& row : rows) CHECK(row.mu_h >= mu3 - 1e-8);

  // non-attained quartic case on the disk: upper bounds shrink toward mu_4
  const auto p4 = make_params_from_p(2, 4.0);
  const auto prof4 = solve_profile(p4, 1e-10);
  const double mu4 = mu_half_space(p4, prof4, 1e-8).value;
  const auto disk = domain_gallery("disk", 128);
  MinimizeOptions slow;  // p = 4 concentrates, inverse iteration crawls
  slow.max_iterations = 2500;
  const auto rows4 = refine_study(disk, p4, {0.08, 0.04}, slow);
  CHECK(rows4[1].mu_h < rows4[0].mu_h);
  for (const auto& row : rows4) CHECK(row.mu_h >= mu4 - 1e-8);
  CHECK(rows4[1].mu_h - mu4 < rows4[0].mu_h - mu4);
}

TEST_CASE("refine study demands a decreasing h list") {
  const auto square = domain_gallery("square", 32);
  const auto params = make_params_from_p(2, 3.0);
  CHECK_THROWS(refine_study(square, params, {}));
  CHECK_THROWS(refine_study(square, params, {0.04, 0.08}));
}

TEST_CASE("solution dump is parseable text") {
  const auto square = domain_gallery("square", 32);
  const auto params = make_params_from_p(2, 3.0);
  const auto sol = minimize_quotient(square, params, 0.15);
  std::ostringstream os;
  write_solution(os, sol);
  const std::string text = os.str();
  CHECK(text.find("# mu_h") != std::string::npos);
  CHECK(text.find("# nodes") != std::string::npos);
  CHECK(text.find("# triangles") != std::string::npos);
  // one row per node and per triangle
  CHECK(std::count(text.begin(), text.end(), '\n') >=
        static_cast<long>(sol.mesh.nodes.size() + sol.mesh.triangles.size()));
}
