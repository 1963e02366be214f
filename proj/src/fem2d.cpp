#include "hslab/fem2d.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "hslab/quadrature.hpp"

namespace hslab {

namespace {

double kidney_radius(double theta) {
  const double d = theta - M_PI;
  return 1.0 - 0.6 * std::exp(-8.0 * d * d / (M_PI * M_PI));
}

double cross2(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double segment_distance(const Point2& a, const Point2& b, const Point2& p) {
  const double vx = b[0] - a[0], vy = b[1] - a[1];
  const double wx = p[0] - a[0], wy = p[1] - a[1];
  const double vv = vx * vx + vy * vy;
  double t = (vv > 0.0) ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = wx - t * vx, dy = wy - t * vy;
  return std::hypot(dx, dy);
}

// ---- Bowyer-Watson Delaunay ------------------------------------------

struct DelTri {
  int a, b, c;
  double cx, cy, r2;
};

bool circumcircle(const std::vector<Point2>& pts, int ia, int ib, int ic,
                  double& cx, double& cy, double& r2) {
  const Point2 &A = pts[ia], &B = pts[ib], &C = pts[ic];
  const double d = 2.0 * (A[0] * (B[1] - C[1]) + B[0] * (C[1] - A[1]) +
                          C[0] * (A[1] - B[1]));
  if (std::abs(d) < 1e-14) return false;
  const double a2 = A[0] * A[0] + A[1] * A[1];
  const double b2 = B[0] * B[0] + B[1] * B[1];
  const double c2 = C[0] * C[0] + C[1] * C[1];
  cx = (a2 * (B[1] - C[1]) + b2 * (C[1] - A[1]) + c2 * (A[1] - B[1])) / d;
  cy = (a2 * (C[0] - B[0]) + b2 * (A[0] - C[0]) + c2 * (B[0] - A[0])) / d;
  const double dx = A[0] - cx, dy = A[1] - cy;
  r2 = dx * dx + dy * dy;
  return true;
}

std::vector<std::array<int, 3>> delaunay(std::vector<Point2> pts) {
  const int n = static_cast<int>(pts.size());
  double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
  for (const auto& p : pts) {
    minx = std::min(minx, p[0]);
    maxx = std::max(maxx, p[0]);
    miny = std::min(miny, p[1]);
    maxy = std::max(maxy, p[1]);
  }
  const double span = std::max(maxx - minx, maxy - miny);
  const double mx = 0.5 * (minx + maxx), my = 0.5 * (miny + maxy);
  pts.push_back({mx - 20.0 * span, my - 10.0 * span});
  pts.push_back({mx + 20.0 * span, my - 10.0 * span});
  pts.push_back({mx, my + 20.0 * span});

  std::vector<DelTri> tris;
  {
    DelTri t{n, n + 1, n + 2, 0, 0, 0};
    circumcircle(pts, t.a, t.b, t.c, t.cx, t.cy, t.r2);
    tris.push_back(t);
  }

  std::vector<int> bad;
  std::map<std::pair<int, int>, int> edge_count;
  for (int ip = 0; ip < n; ++ip) {
    const Point2& p = pts[ip];
    bad.clear();
    for (int i = 0; i < static_cast<int>(tris.size()); ++i) {
      const double dx = p[0] - tris[i].cx, dy = p[1] - tris[i].cy;
      if (dx * dx + dy * dy <= tris[i].r2 * (1.0 - 1e-12)) bad.push_back(i);
    }
    if (bad.empty()) {
      // tolerance pushed the point outside every circle; retry loosely
      for (int i = 0; i < static_cast<int>(tris.size()); ++i) {
        const double dx = p[0] - tris[i].cx, dy = p[1] - tris[i].cy;
        if (dx * dx + dy * dy <= tris[i].r2 * (1.0 + 1e-12)) bad.push_back(i);
      }
    }
    edge_count.clear();
    auto add_edge = [&](int u, int v) {
      edge_count[{std::min(u, v), std::max(u, v)}]++;
    };
    for (int i : bad) {
      add_edge(tris[i].a, tris[i].b);
      add_edge(tris[i].b, tris[i].c);
      add_edge(tris[i].c, tris[i].a);
    }
    std::sort(bad.rbegin(), bad.rend());
    for (int i : bad) {
      tris[i] = tris.back();
      tris.pop_back();
    }
    for (const auto& [e, cnt] : edge_count) {
      if (cnt != 1) continue;
      int u = e.first, v = e.second;
      if (cross2(pts[u], pts[v], p) < 0.0) std::swap(u, v);
      DelTri t{u, v, ip, 0, 0, 0};
      if (!circumcircle(pts, t.a, t.b, t.c, t.cx, t.cy, t.r2)) continue;
      tris.push_back(t);
    }
  }

  std::vector<std::array<int, 3>> out;
  for (const auto& t : tris) {
    if (t.a >= n || t.b >= n || t.c >= n) continue;
    out.push_back({t.a, t.b, t.c});
  }
  return out;
}

// set of undirected boundary edges (edges owned by exactly one triangle)
std::set<std::pair<int, int>> boundary_edges(
    const std::vector<std::array<int, 3>>& tris) {
  std::map<std::pair<int, int>, int> cnt;
  for (const auto& t : tris) {
    for (int k = 0; k < 3; ++k) {
      const int u = t[k], v = t[(k + 1) % 3];
      cnt[{std::min(u, v), std::max(u, v)}]++;
    }
  }
  std::set<std::pair<int, int>> out;
  for (const auto& [e, c] : cnt)
    if (c == 1) out.insert(e);
  return out;
}

// ---- element quadrature ----------------------------------------------

struct QuadPt {
  double w = 0.0;      // full weight including jacobians
  double dinvs = 0.0;  // delta^{-s}
  double phi[3] = {0, 0, 0};
};

struct ElemCache {
  std::array<int, 3> idx;
  std::vector<QuadPt> pts;
};

// degree-5 seven point rule, barycentric
constexpr double kTri7[7][4] = {
    {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225},
    {0.059715871789770, 0.470142064105115, 0.470142064105115,
     0.132394152788506},
    {0.470142064105115, 0.059715871789770, 0.470142064105115,
     0.132394152788506},
    {0.470142064105115, 0.470142064105115, 0.059715871789770,
     0.132394152788506},
    {0.797426985353087, 0.101286507323456, 0.101286507323456,
     0.125939180544827},
    {0.101286507323456, 0.797426985353087, 0.101286507323456,
     0.125939180544827},
    {0.101286507323456, 0.101286507323456, 0.797426985353087,
     0.125939180544827}};

}  // namespace

PolygonDomain domain_gallery(const std::string& name, int resolution) {
  PolygonDomain d;
  if (name == "square") {
    d.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    return d;
  }
  if (resolution < 32)
    throw std::invalid_argument("domain_gallery: resolution must be >= 32");
  if (name == "disk") {
    for (int i = 0; i < resolution; ++i) {
      const double th = 2.0 * M_PI * i / resolution;
      d.vertices.push_back({std::cos(th), std::sin(th)});
    }
    return d;
  }
  if (name == "kidney") {
    d.smooth_source = "polar 1 - 0.6 exp(-8 (theta-pi)^2/pi^2)";
    for (int i = 0; i < resolution; ++i) {
      const double th = 2.0 * M_PI * i / resolution;
      const double r = kidney_radius(th);
      d.vertices.push_back({r * std::cos(th), r * std::sin(th)});
    }
    return d;
  }
  throw std::invalid_argument("domain_gallery: unknown name '" + name + "'");
}

double kidney_signed_curvature(double theta) {
  const double a = 0.6, k = 8.0 / (M_PI * M_PI);
  const double d = theta - M_PI;
  const double e = std::exp(-k * d * d);
  const double r = 1.0 - a * e;
  const double r1 = 2.0 * a * k * d * e;
  const double r2 = 2.0 * a * k * e - 4.0 * a * k * k * d * d * e;
  const double denom = std::pow(r * r + r1 * r1, 1.5);
  return (r * r + 2.0 * r1 * r1 - r * r2) / denom;
}

double polygon_signed_area(const PolygonDomain& domain) {
  const auto& v = domain.vertices;
  double acc = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    acc += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * acc;
}

bool polygon_convex(const PolygonDomain& domain) {
  const auto& v = domain.vertices;
  const size_t m = v.size();
  for (size_t i = 0; i < m; ++i) {
    const double c = cross2(v[i], v[(i + 1) % m], v[(i + 2) % m]);
    if (c < -1e-12) return false;
  }
  return true;
}

bool polygon_contains(const PolygonDomain& domain, const Point2& p) {
  const auto& v = domain.vertices;
  bool inside = false;
  for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i][1] > p[1]) != (v[j][1] > p[1])) {
      const double x = v[j][0] + (v[i][0] - v[j][0]) * (p[1] - v[j][1]) /
                                     (v[i][1] - v[j][1]);
      if (p[0] < x) inside = !inside;
    }
  }
  return inside;
}

double distance_to_boundary(const PolygonDomain& domain, const Point2& p) {
  const auto& v = domain.vertices;
  double best = 1e300;
  for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
    best = std::min(best, segment_distance(v[j], v[i], p));
  return best;
}

TriangleMesh build_mesh(const PolygonDomain& domain, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("build_mesh: h must be positive");
  const auto& v = domain.vertices;
  std::vector<Point2> pts;
  // boundary chain at spacing <= h/2
  for (size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    const int parts = std::max(1, static_cast<int>(std::ceil(len / (0.5 * h))));
    for (int k = 0; k < parts; ++k) {
      const double t = static_cast<double>(k) / parts;
      pts.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    }
  }
  const size_t n_boundary = pts.size();
  // interior hexagonal lattice, clear of the boundary
  double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
  for (const auto& p : v) {
    minx = std::min(minx, p[0]);
    maxx = std::max(maxx, p[0]);
    miny = std::min(miny, p[1]);
    maxy = std::max(maxy, p[1]);
  }
  const double row = h * std::sqrt(3.0) / 2.0;
  int jrow = 0;
  for (double y = miny + 0.5 * row; y < maxy; y += row, ++jrow) {
    const double off = (jrow % 2) ? 0.5 * h : 0.0;
    for (double x = minx + 0.25 * h + off; x < maxx; x += h) {
      const Point2 p{x + 1e-5 * h * std::sin(1e4 * (x + 3.0 * y)),
                     y + 1e-5 * h * std::cos(1e4 * (2.0 * x - y))};
      if (!polygon_contains(domain, p)) continue;
      if (distance_to_boundary(domain, p) < 0.45 * h) continue;
      pts.push_back(p);
    }
  }

  auto tris = delaunay(pts);
  // discard triangles outside the (possibly non-convex) polygon
  std::vector<std::array<int, 3>> kept;
  for (const auto& t : tris) {
    const Point2 c{(pts[t[0]][0] + pts[t[1]][0] + pts[t[2]][0]) / 3.0,
                   (pts[t[0]][1] + pts[t[1]][1] + pts[t[2]][1]) / 3.0};
    if (!polygon_contains(domain, c)) continue;
    kept.push_back(t);
  }

  // compact node indexing
  std::vector<int> remap(pts.size(), -1);
  TriangleMesh mesh;
  mesh.h = h;
  for (auto& t : kept) {
    for (int& id : t) {
      if (remap[id] < 0) {
        remap[id] = static_cast<int>(mesh.nodes.size());
        mesh.nodes.push_back(pts[id]);
      }
      id = remap[id];
    }
    if (cross2(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]) < 0.0)
      std::swap(t[1], t[2]);
  }
  mesh.triangles = kept;
  mesh.boundary_node.assign(mesh.nodes.size(), false);
  for (const auto& [u, w] : boundary_edges(mesh.triangles)) {
    mesh.boundary_node[u] = true;
    mesh.boundary_node[w] = true;
  }
  (void)n_boundary;
  return mesh;
}

TriangleMesh refine_mesh(const TriangleMesh& mesh) {
  TriangleMesh out;
  out.h = 0.5 * mesh.h;
  out.nodes = mesh.nodes;
  out.boundary_node = mesh.boundary_node;
  const auto bedges = boundary_edges(mesh.triangles);
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int u, int v) {
    const auto key = std::make_pair(std::min(u, v), std::max(u, v));
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int id = static_cast<int>(out.nodes.size());
    out.nodes.push_back({0.5 * (mesh.nodes[u][0] + mesh.nodes[v][0]),
                         0.5 * (mesh.nodes[u][1] + mesh.nodes[v][1])});
    out.boundary_node.push_back(bedges.count(key) > 0);
    midpoint.emplace(key, id);
    return id;
  };
  for (const auto& t : mesh.triangles) {
    const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
    out.triangles.push_back({t[0], ab, ca});
    out.triangles.push_back({ab, t[1], bc});
    out.triangles.push_back({ca, bc, t[2]});
    out.triangles.push_back({ab, bc, ca});
  }
  return out;
}

namespace {

std::vector<ElemCache> build_caches(const PolygonDomain& domain,
                                    const TriangleMesh& mesh, double s,
                                    int order) {
  const auto bedges = boundary_edges(mesh.triangles);
  std::vector<double> gx, gw;
  gauss_legendre_01(order, gx, gw);

  std::vector<ElemCache> caches;
  caches.reserve(mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    ElemCache ec;
    ec.idx = t;
    const Point2 P[3] = {mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]};
    const double area2 = cross2(P[0], P[1], P[2]);

    int be = -1;  // local index of a boundary edge (opposite node be+2)
    for (int k = 0; k < 3; ++k) {
      const int u = t[k], w = t[(k + 1) % 3];
      if (bedges.count({std::min(u, w), std::max(u, w)})) {
        be = k;
        break;
      }
    }
    int bv = -1;
    if (be < 0)
      for (int k = 0; k < 3; ++k)
        if (mesh.boundary_node[t[k]]) {
          bv = k;
          break;
        }

    auto push = [&](double w, double lam0, double lam1, double lam2) {
      QuadPt qp;
      qp.w = w;
      qp.phi[0] = lam0;
      qp.phi[1] = lam1;
      qp.phi[2] = lam2;
      const Point2 x{lam0 * P[0][0] + lam1 * P[1][0] + lam2 * P[2][0],
                     lam0 * P[0][1] + lam1 * P[1][1] + lam2 * P[2][1]};
      const double delta = distance_to_boundary(domain, x);
      qp.dinvs = std::pow(delta, -s);
      ec.pts.push_back(qp);
    };

    if (be >= 0) {
      // collapsed tensor rule graded toward the boundary edge (tau = sig^3)
      const int ia = be, ib = (be + 1) % 3, ic = (be + 2) % 3;
      for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
          const double xi = gx[i], sig = gx[j];
          const double tau = sig * sig * sig;
          const double w =
              gw[i] * gw[j] * 3.0 * sig * sig * (1.0 - tau) * area2;
          double lam[3];
          lam[ia] = (1.0 - tau) * (1.0 - xi);
          lam[ib] = (1.0 - tau) * xi;
          lam[ic] = tau;
          push(w, lam[0], lam[1], lam[2]);
        }
      }
    } else if (bv >= 0) {
      // collapsed toward the boundary vertex (tau = sig^2)
      const int iv = bv, ip = (bv + 1) % 3, iq = (bv + 2) % 3;
      for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
          const double xi = gx[i], sig = gx[j];
          const double tau = sig * sig;
          const double w = gw[i] * gw[j] * 2.0 * sig * tau * area2;
          double lam[3];
          lam[iv] = 1.0 - tau;
          lam[ip] = tau * (1.0 - xi);
          lam[iq] = tau * xi;
          push(w, lam[0], lam[1], lam[2]);
        }
      }
    } else {
      for (const auto& row : kTri7)
        push(row[3] * 0.5 * area2, row[0], row[1], row[2]);
    }
    caches.push_back(std::move(ec));
  }
  return caches;
}

}  // namespace

FemSolution minimize_on_mesh(const PolygonDomain& domain,
                             const ProblemParams& params,
                             const TriangleMesh& mesh,
                             const MinimizeOptions& opts) {
  if (params.dim != 2)
    throw std::invalid_argument("minimize_on_mesh: planar problem needs N = 2");
  const double s = params.s, p = params.p;
  const int n_nodes = static_cast<int>(mesh.nodes.size());

  std::vector<int> dof(n_nodes, -1);
  int n_dof = 0;
  for (int i = 0; i < n_nodes; ++i)
    if (!mesh.boundary_node[i]) dof[i] = n_dof++;
  if (n_dof == 0)
    throw std::runtime_error("minimize_on_mesh: no interior nodes");

  // stiffness over interior dofs
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& t : mesh.triangles) {
    const Point2 P[3] = {mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]};
    const double area2 = cross2(P[0], P[1], P[2]);
    double gx[3], gy[3];
    for (int k = 0; k < 3; ++k) {
      const Point2 &a = P[(k + 1) % 3], &b = P[(k + 2) % 3];
      gx[k] = (a[1] - b[1]) / area2;
      gy[k] = (b[0] - a[0]) / area2;
    }
    for (int i = 0; i < 3; ++i) {
      if (dof[t[i]] < 0) continue;
      for (int j = 0; j < 3; ++j) {
        if (dof[t[j]] < 0) continue;
        trips.emplace_back(dof[t[i]], dof[t[j]],
                           0.5 * area2 * (gx[i] * gx[j] + gy[i] * gy[j]));
      }
    }
  }
  Eigen::SparseMatrix<double> K(n_dof, n_dof);
  K.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(K);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("minimize_on_mesh: factorization failed");

  const auto caches = build_caches(domain, mesh, s, opts.quad_order);

  auto weight_norm = [&](const Eigen::VectorXd& u) {
    double acc = 0.0;
    for (const auto& ec : caches) {
      const double un[3] = {dof[ec.idx[0]] >= 0 ? u[dof[ec.idx[0]]] : 0.0,
                            dof[ec.idx[1]] >= 0 ? u[dof[ec.idx[1]]] : 0.0,
                            dof[ec.idx[2]] >= 0 ? u[dof[ec.idx[2]]] : 0.0};
      for (const auto& qp : ec.pts) {
        const double v =
            un[0] * qp.phi[0] + un[1] * qp.phi[1] + un[2] * qp.phi[2];
        acc += qp.w * qp.dinvs * std::pow(std::abs(v), p);
      }
    }
    return acc;
  };
  auto weight_force = [&](const Eigen::VectorXd& u) {
    Eigen::VectorXd F = Eigen::VectorXd::Zero(n_dof);
    for (const auto& ec : caches) {
      const int d0 = dof[ec.idx[0]], d1 = dof[ec.idx[1]], d2 = dof[ec.idx[2]];
      const double un[3] = {d0 >= 0 ? u[d0] : 0.0, d1 >= 0 ? u[d1] : 0.0,
                            d2 >= 0 ? u[d2] : 0.0};
      for (const auto& qp : ec.pts) {
        const double v =
            un[0] * qp.phi[0] + un[1] * qp.phi[1] + un[2] * qp.phi[2];
        const double f = qp.w * qp.dinvs *
                         std::pow(std::abs(v), p - 2.0) * v;
        if (d0 >= 0) F[d0] += f * qp.phi[0];
        if (d1 >= 0) F[d1] += f * qp.phi[1];
        if (d2 >= 0) F[d2] += f * qp.phi[2];
      }
    }
    return F;
  };
  auto normalize = [&](Eigen::VectorXd u) {
    const double nrm = weight_norm(u);
    if (!(nrm > 0.0))
      throw std::runtime_error("minimize_on_mesh: degenerate iterate");
    u /= std::pow(nrm, 1.0 / p);
    return u;
  };
  auto energy = [&](const Eigen::VectorXd& u) { return u.dot(K * u); };

  Eigen::VectorXd u(n_dof);
  for (int i = 0; i < n_nodes; ++i)
    if (dof[i] >= 0) u[dof[i]] = distance_to_boundary(domain, mesh.nodes[i]);
  u = normalize(u);
  double q = energy(u);

  FemSolution sol;
  sol.mesh = mesh;
  sol.convergence_trace.push_back(q);
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    const Eigen::VectorXd F = weight_force(u);
    const Eigen::VectorXd v = solver.solve(F);
    Eigen::VectorXd vn = normalize(v);
    double alpha = 1.0;
    Eigen::VectorXd cand;
    double qc = q;
    while (alpha > 1.0 / 4096) {
      cand = normalize(u + alpha * (vn - u));
      qc = energy(cand);
      if (qc <= q * (1.0 + 1e-13)) break;
      alpha *= 0.5;
    }
    if (qc > q * (1.0 + 1e-13)) break;  // no descent direction left
    const double drop = q - qc;
    u = cand;
    q = qc;
    sol.convergence_trace.push_back(q);
    if (drop < opts.tol * std::abs(q) && it > 2) {
      ++it;
      break;
    }
  }
  if (it >= opts.max_iterations)
    throw std::runtime_error("minimize_on_mesh: iteration budget exceeded");

  // sign normalization and solution assembly
  if (u.sum() < 0.0) u = -u;
  sol.u.assign(n_nodes, 0.0);
  for (int i = 0; i < n_nodes; ++i)
    if (dof[i] >= 0) sol.u[i] = u[dof[i]];
  sol.mu_h = q;
  sol.iterations = it;

  const Eigen::VectorXd F = weight_force(u);
  const Eigen::VectorXd r = K * u - q * F;
  sol.el_residual = std::sqrt(std::abs(r.dot(solver.solve(r))));
  return sol;
}

FemSolution minimize_quotient(const PolygonDomain& domain,
                              const ProblemParams& params, double h,
                              const MinimizeOptions& opts) {
  return minimize_on_mesh(domain, params, build_mesh(domain, h), opts);
}

std::vector<RefineRow> refine_study(const PolygonDomain& domain,
                                    const ProblemParams& params,
                                    const std::vector<double>& h_list,
                                    const MinimizeOptions& opts) {
  if (h_list.empty())
    throw std::invalid_argument("refine_study: empty h list");
  for (size_t i = 1; i < h_list.size(); ++i)
    if (h_list[i] >= h_list[i - 1])
      throw std::invalid_argument("refine_study: h list must decrease");
  std::vector<RefineRow> rows;
  TriangleMesh mesh = build_mesh(domain, h_list.front());
  for (size_t i = 0; i < h_list.size(); ++i) {
    if (i > 0) mesh = refine_mesh(mesh);
    FemSolution sol = minimize_on_mesh(domain, params, mesh, opts);
    rows.push_back({h_list[i], sol.mu_h});
  }
  return rows;
}

void write_solution(std::ostream& os, const FemSolution& sol) {
  os << std::setprecision(17);
  os << "# hslab fem solution\n";
  os << "# mu_h " << sol.mu_h << "\n";
  os << "# iterations " << sol.iterations << "\n";
  os << "# el_residual " << sol.el_residual << "\n";
  os << "# nodes " << sol.mesh.nodes.size() << "\n";
  for (size_t i = 0; i < sol.mesh.nodes.size(); ++i)
    os << sol.mesh.nodes[i][0] << " " << sol.mesh.nodes[i][1] << " "
       << (sol.mesh.boundary_node[i] ? 1 : 0) << " " << sol.u[i] << "\n";
  os << "# triangles " << sol.mesh.triangles.size() << "\n";
  for (const auto& t : sol.mesh.triangles)
    os << t[0] << " " << t[1] << " " << t[2] << "\n";
  os << "# trace iteration,quotient\n";
  for (size_t i = 0; i < sol.convergence_trace.size(); ++i)
    os << i << "," << sol.convergence_trace[i] << "\n";
}

}  // namespace hslab
