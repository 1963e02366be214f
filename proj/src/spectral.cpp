#include "hslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hslab/quadrature.hpp"

namespace hslab {

namespace {

// graded nodes on [0,1], clustered at both endpoints
std::vector<double> spectral_grid(int m) {
  std::vector<double> g(m + 1);
  for (int i = 0; i <= m; ++i) {
    const double xi = static_cast<double>(i) / m;
    g[i] = xi * xi * (3.0 - 2.0 * xi);
  }
  g.front() = 0.0;
  g.back() = 1.0;
  return g;
}

struct Pencil {
  // symmetric tridiagonal pencil A x = lambda B x
  std::vector<double> a_diag, a_off, b_diag, b_off;
  int size() const { return static_cast<int>(a_diag.size()); }
};

// number of eigenvalues of the pencil below lambda (Sturm count via the
// pivots of the LDL^T factorization of A - lambda B)
int count_below(const Pencil& p, double lambda) {
  const int n = p.size();
  int neg = 0;
  double d_prev = 1.0;
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = p.a_diag[i] - lambda * p.b_diag[i];
    if (i == 0) {
      d = t;
    } else {
      const double e = p.a_off[i - 1] - lambda * p.b_off[i - 1];
      d = t - e * e / d_prev;
    }
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++neg;
    d_prev = d;
  }
  return neg;
}

// tridiagonal solve with partial pivoting (one extra superdiagonal of fill);
// sub and sup must be padded to length n (last slot unused)
void tridiag_solve(std::vector<double> sub, std::vector<double> diag,
                   std::vector<double> sup, std::vector<double>& rhs) {
  const int n = static_cast<int>(diag.size());
  sup.push_back(0.0);  // allow sup[i+1] access at i = n-2
  std::vector<double> sup2(n + 1, 0.0);
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(sub[i]) > std::abs(diag[i])) {
      std::swap(diag[i], sub[i]);
      std::swap(sup[i], diag[i + 1]);
      std::swap(sup2[i], sup[i + 1]);
      std::swap(rhs[i], rhs[i + 1]);
    }
    if (diag[i] == 0.0) diag[i] = 1e-300;
    const double m = sub[i] / diag[i];
    diag[i + 1] -= m * sup[i];
    sup[i + 1] -= m * sup2[i];
    rhs[i + 1] -= m * rhs[i];
  }
  if (diag[n - 1] == 0.0) diag[n - 1] = 1e-300;
  for (int i = n - 1; i >= 0; --i) {
    double v = rhs[i];
    if (i + 1 < n) v -= sup[i] * rhs[i + 1];
    if (i + 2 < n) v -= sup2[i] * rhs[i + 2];
    rhs[i] = v / diag[i];
  }
}

std::vector<double> inverse_iterate(const Pencil& p, double shift) {
  const int n = p.size();
  std::vector<double> x(n, 1.0);
  for (int it = 0; it < 4; ++it) {
    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) {
      double v = p.b_diag[i] * x[i];
      if (i > 0) v += p.b_off[i - 1] * x[i - 1];
      if (i + 1 < n) v += p.b_off[i] * x[i + 1];
      rhs[i] = v;
    }
    std::vector<double> sub(n, 0.0), diag(n), sup(n, 0.0);
    for (int i = 0; i < n; ++i) diag[i] = p.a_diag[i] - shift * p.b_diag[i];
    for (int i = 0; i + 1 < n; ++i)
      sub[i] = sup[i] = p.a_off[i] - shift * p.b_off[i];
    tridiag_solve(sub, diag, sup, rhs);
    double nrm = 0.0;
    for (double v : rhs) nrm = std::max(nrm, std::abs(v));
    for (int i = 0; i < n; ++i) x[i] = rhs[i] / nrm;
  }
  // sign convention: positive mean
  double mean = 0.0;
  for (double v : x) mean += v;
  if (mean < 0.0)
    for (double& v : x) v = -v;
  return x;
}

}  // namespace

ModeProblem make_mode_problem(const ProblemParams& params,
                              const RadialProfile& profile, int k, int n_grid) {
  if (k < 0) throw std::invalid_argument("make_mode_problem: k must be >= 0");
  if (n_grid < 200)
    throw std::invalid_argument("make_mode_problem: n_grid must be >= 200");
  ModeProblem mode;
  mode.params = params;
  mode.profile = profile;
  mode.k = k;
  mode.mu_k = static_cast<double>(k) * (k + params.dim - 2);
  mode.n_grid = n_grid;
  return mode;
}

double weight_fn(const ProblemParams& params, const RadialProfile& profile,
                 double r) {
  if (!(r > 0.0 && r < 1.0))
    throw std::domain_error("weight_fn: r must lie in (0,1)");
  const double u = std::max(0.0, evaluate_profile(profile, r).first);
  return std::pow(2.0 / (1.0 - r * r), params.s) *
         std::pow(u, params.p - 2.0);
}

SpectrumReport mode_eigens(const ModeProblem& mode, int count) {
  const int n = mode.params.dim;
  const int m = mode.n_grid;
  const std::vector<double> grid = spectral_grid(m);
  const int i0 = (mode.k == 0) ? 0 : 1;  // essential condition at r=0 for k>=1
  const int nun = m - i0;                // unknowns: nodes i0 .. m-1

  Pencil p;
  p.a_diag.assign(nun, 0.0);
  p.a_off.assign(nun - 1, 0.0);
  p.b_diag.assign(nun, 0.0);
  p.b_off.assign(nun - 1, 0.0);

  auto rho = [&](double r) {
    // deep panel refinement can round a node onto the endpoints
    r = std::clamp(r, 1e-14, 1.0 - 1e-14);
    return weight_fn(mode.params, mode.profile, r);
  };
  for (int e = 0; e < m; ++e) {
    const double r0 = grid[e], r1 = grid[e + 1];
    const double h = r1 - r0;
    // exact stiffness: (1/h^2) \int r^{N-1} dr
    const double se = (std::pow(r1, n) - std::pow(r0, n)) / (n * h * h);
    double loc_a[2][2] = {{se, -se}, {-se, se}};
    double loc_b[2][2] = {{0, 0}, {0, 0}};
    auto hat = [&](int i, double r) {
      return i == 0 ? (r1 - r) / h : (r - r0) / h;
    };
    for (int i = 0; i < 2; ++i) {
      for (int j = i; j < 2; ++j) {
        if (mode.mu_k != 0.0) {
          QuadResult q = integrate_1d(
              [&](double r) {
                return hat(i, r) * hat(j, r) * std::pow(r, n - 3);
              },
              r0, r1, 1e-300, 1e-11);
          loc_a[i][j] += mode.mu_k * q.value;
          loc_a[j][i] = loc_a[i][j];
        }
        QuadResult q = integrate_1d(
            [&](double r) {
              return rho(r) * hat(i, r) * hat(j, r) * std::pow(r, n - 1.0);
            },
            r0, r1, 1e-300, 1e-11);
        loc_b[i][j] = loc_b[j][i] = q.value;
      }
    }
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const int gi = e + i - i0, gj = e + j - i0;
        if (gi < 0 || gj < 0 || gi >= nun || gj >= nun) continue;
        if (gi == gj) {
          p.a_diag[gi] += loc_a[i][j];
          p.b_diag[gi] += loc_b[i][j];
        } else if (gj == gi + 1) {
          p.a_off[gi] += loc_a[i][j];
          p.b_off[gi] += loc_b[i][j];
        }
      }
    }
  }

  // bracket, then bisect each of the lowest `count` eigenvalues
  double hi = 4.0 * std::max(1.0, mode.params.p - 1.0);
  while (count_below(p, hi) < count && hi < 1e12) hi *= 2.0;
  if (count_below(p, hi) < count)
    throw std::runtime_error("mode_eigens: eigenvalue bracket failure");

  SpectrumReport rep;
  rep.k = mode.k;
  rep.mu_k = mode.mu_k;
  rep.n_grid = mode.n_grid;
  for (int j = 1; j <= count; ++j) {
    double lo = 0.0, up = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + up);
      if (mid == lo || mid == up) break;
      if (count_below(p, mid) >= j)
        up = mid;
      else
        lo = mid;
    }
    rep.eigenvalues.push_back(0.5 * (lo + up));
  }

  const double l1 = rep.eigenvalues.front();
  const std::vector<double> x = inverse_iterate(p, l1 * (1.0 - 1e-9) - 1e-12);
  rep.grid.assign(grid.begin() + i0, grid.end() - 1);
  rep.eigenfunction_samples = x;
  return rep;
}

double xi_residual(const ProblemParams& params, const RadialProfile& profile) {
  const int n = params.dim;
  const double s = params.s, p = params.p;
  const double two_s = std::pow(2.0, s);
  auto res2 = [&](double r) {
    const auto [u, du] = evaluate_profile(profile, r);
    const double up = std::max(u, 0.0);
    const double w = 1.0 - r * r;
    const double f = -two_s * std::pow(up, p - 1.0) * std::pow(w, -s);
    const double d2u = -(n - 1) / r * du + f;
    const double fp = -two_s * ((p - 1.0) * std::pow(up, p - 2.0) * du *
                                    std::pow(w, -s) +
                                2.0 * s * r * std::pow(up, p - 1.0) *
                                    std::pow(w, -s - 1.0));
    const double d3u = (n - 1) / (r * r) * du - (n - 1) / r * d2u + fp;
    const double xi = du * w - (n - 2) * r * u;
    const double xi1 = d2u * w - 2.0 * r * du - (n - 2) * (u + r * du);
    const double xi2 = d3u * w - 4.0 * r * d2u - 2.0 * du -
                       (n - 2) * (2.0 * du + r * d2u);
    const double rho = std::pow(2.0 / w, s) * std::pow(up, p - 2.0);
    const double lead = (p - 1.0) * rho * xi;
    const double res = xi2 + (n - 1) / r * xi1 - (n - 1) / (r * r) * xi + lead;
    const double meas = std::pow(r, n - 1.0);
    return std::array<double, 2>{res * res * meas, lead * lead * meas};
  };
  QuadResult num = integrate_1d([&](double r) { return res2(r)[0]; }, 0.01,
                                0.99, 1e-300, 1e-9);
  QuadResult den = integrate_1d([&](double r) { return res2(r)[1]; }, 0.01,
                                0.99, 1e-300, 1e-9);
  return std::sqrt(num.value / den.value);
}

NondegeneracyCertificate nondegeneracy_certificate(const ProblemParams& params,
                                                   const RadialProfile& profile,
                                                   int k_max, int n_grid,
                                                   double tol) {
  if (k_max < 2)
    throw std::invalid_argument("nondegeneracy_certificate: k_max must be >= 2");
  const double pm1 = params.p - 1.0;
  NondegeneracyCertificate cert;
  cert.multiplicity = params.dim;
  for (int k = 0; k <= k_max; ++k) {
    SpectrumReport rep =
        mode_eigens(make_mode_problem(params, profile, k, n_grid),
                    k == 0 ? 2 : 1);
    cert.lambda1_per_mode.push_back(rep.eigenvalues.front());
    if (k == 0) {
      cert.lambda1_k0 = rep.eigenvalues[0];
      cert.lambda2_k0 = rep.eigenvalues[1];
    } else if (k == 1) {
      cert.lambda1_k1 = rep.eigenvalues[0];
    } else if (k == 2) {
      cert.margin_k2 = rep.eigenvalues[0] - pm1;
    }
  }
  bool ok = std::abs(cert.lambda1_k0 - 1.0) <= tol;
  ok = ok && cert.lambda2_k0 > pm1 + tol;
  ok = ok && std::abs(cert.lambda1_k1 - pm1) <= tol;
  ok = ok && cert.margin_k2 > tol;
  for (size_t k = 2; k < cert.lambda1_per_mode.size(); ++k)
    ok = ok && cert.lambda1_per_mode[k] > pm1 + tol;
  cert.certified = ok;
  return cert;
}

}  // namespace hslab
