#include "hslab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hslab {

namespace {

constexpr double kStartRadius = 1e-4;
constexpr double kEndGap = 1e-6;  // integrate up to r = 1 - kEndGap
constexpr int kMaxBisect = 200;

struct Ode {
  int dim;
  double s, p, two_s;

  explicit Ode(const ProblemParams& params)
      : dim(params.dim), s(params.s), p(params.p), two_s(std::pow(2.0, params.s)) {}

  // y = (u, w);  w' = -(N-1)/r w - 2^s u^{p-1} (1-r^2)^{-s}
  void rhs(double r, const double y[2], double dy[2]) const {
    const double u = std::max(y[0], 0.0);
    dy[0] = y[1];
    dy[1] = -(dim - 1) / r * y[1] -
            two_s * std::pow(u, p - 1.0) * std::pow(1.0 - r * r, -s);
  }
};

// Dormand-Prince 5(4) coefficients.
constexpr double kA[7][6] = {
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kC[7] = {0,        1.0 / 5,  3.0 / 10, 4.0 / 5,
                          8.0 / 9,  1.0,      1.0};
constexpr double kB5[7] = {35.0 / 384,      0, 500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784,  11.0 / 84, 0};
constexpr double kB4[7] = {5179.0 / 57600,   0, 7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct IntegrationResult {
  bool hit_zero = false;     // u crossed zero before the endpoint
  double r_end = 0.0;
  double u_end = 0.0, w_end = 0.0;
  std::vector<double> rs, us, ws;  // filled only when recording
};

IntegrationResult integrate(const Ode& ode, double a, double rtol, double atol,
                            bool record) {
  IntegrationResult out;
  const double r_stop = 1.0 - kEndGap;
  double r = kStartRadius;
  double y[2];
  // regularized series start; removes the (N-1)/r singularity
  const double c2 = ode.two_s * std::pow(a, ode.p - 1.0) / (2.0 * ode.dim);
  y[0] = a - c2 * r * r;
  y[1] = -2.0 * c2 * r;

  if (record) {
    out.rs.push_back(r);
    out.us.push_back(y[0]);
    out.ws.push_back(y[1]);
  }

  double h = 1e-5;
  const double hmax = 2e-3;
  double k[7][2], ytmp[2], y5[2], y4[2];
  int steps = 0;
  const int max_steps = 2000000;

  while (r < r_stop) {
    if (++steps > max_steps)
      throw std::runtime_error("radial shoot: step budget exceeded");
    h = std::min({h, hmax, r_stop - r});
    ode.rhs(r, y, k[0]);
    bool reject_nan = false;
    for (int st = 1; st < 7; ++st) {
      ytmp[0] = y[0];
      ytmp[1] = y[1];
      for (int j = 0; j < st; ++j) {
        ytmp[0] += h * kA[st][j] * k[j][0];
        ytmp[1] += h * kA[st][j] * k[j][1];
      }
      const double rr = r + kC[st] * h;
      ode.rhs(rr, ytmp, k[st]);
      if (!std::isfinite(k[st][1])) reject_nan = true;
    }
    if (reject_nan) {
      h *= 0.25;
      continue;
    }
    for (int i = 0; i < 2; ++i) {
      y5[i] = y[i];
      y4[i] = y[i];
      for (int st = 0; st < 7; ++st) {
        y5[i] += h * kB5[st] * k[st][i];
        y4[i] += h * kB4[st] * k[st][i];
      }
    }
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(y5[i] - y4[i]) / sc);
    }
    if (err <= 1.0 || h <= 1e-14) {
      r += h;
      y[0] = y5[0];
      y[1] = y5[1];
      if (record) {
        out.rs.push_back(r);
        out.us.push_back(y[0]);
        out.ws.push_back(y[1]);
      }
      if (y[0] <= 0.0) {
        out.hit_zero = true;
        break;
      }
    }
    const double fac =
        std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    h = std::max(h * fac, 1e-14);
  }
  out.r_end = r;
  out.u_end = y[0];
  out.w_end = y[1];
  return out;
}

// graded grid on [0,1] clustering at both endpoints
std::vector<double> graded_grid(int m) {
  std::vector<double> g(m + 1);
  for (int i = 0; i <= m; ++i) {
    const double xi = static_cast<double>(i) / m;
    g[i] = xi * xi * (3.0 - 2.0 * xi);
  }
  g.front() = 0.0;
  g.back() = 1.0;
  return g;
}

}  // namespace

std::optional<RadialProfile> closed_form_profile(const ProblemParams& params) {
  if (params.family == Family::general) return std::nullopt;
  const double n = params.dim;
  RadialProfile prof;
  prof.params = params;
  prof.source = ProfileSource::closed_form;
  prof.grid = graded_grid(2400);
  prof.values.resize(prof.grid.size());
  prof.derivs.resize(prof.grid.size());
  if (params.family == Family::explicit_2_over_n) {
    const double c = 0.5 * std::pow(n, 0.5 * n);
    for (size_t i = 0; i < prof.grid.size(); ++i) {
      const double r = prof.grid[i];
      prof.values[i] = c * (1.0 - r * r);
      prof.derivs[i] = -2.0 * c * r;
    }
  } else {
    const double c = 0.5 * std::pow(n * (n + 2.0), 0.25 * n);
    for (size_t i = 0; i < prof.grid.size(); ++i) {
      const double r = prof.grid[i];
      const double q = 1.0 + r * r;
      const double qp = std::pow(q, -0.5 * n);
      prof.values[i] = c * (1.0 - r * r) * qp;
      prof.derivs[i] =
          -c * r * qp / q * (2.0 * q + n * (1.0 - r * r));
    }
  }
  prof.values.back() = 0.0;
  prof.shoot_param = prof.values.front();
  prof.boundary_slope = prof.derivs.back();
  return prof;
}

RadialProfile shoot(const ProblemParams& params, double tol,
                    ShootTrace* trace) {
  if (!(tol > 0.0)) throw std::invalid_argument("shoot: tol must be positive");
  const Ode ode(params);
  const double rtol = std::min(1e-13, tol * 1e-5);

  // boundary defect: value at r = 1 extrapolated from the endpoint to
  // second order (the curvature term matters for large amplitudes);
  // negative iff the trajectory overshoots (crosses zero)
  auto extrapolate = [&](const IntegrationResult& res) {
    const double yend[2] = {res.u_end, res.w_end};
    double dy[2];
    ode.rhs(res.r_end, yend, dy);
    const double gap = 1.0 - res.r_end;
    return res.u_end + res.w_end * gap + 0.5 * dy[1] * gap * gap;
  };
  auto defect = [&](double a) {
    IntegrationResult res = integrate(ode, a, rtol, rtol * a, false);
    double g = extrapolate(res);
    if (res.hit_zero && g > 0.0) g = res.u_end;
    if (trace) trace->attempts.emplace_back(a, g < 0.0);
    return g;
  };
  auto overshoots = [&](double a) { return defect(a) < 0.0; };

  // log-scan for a sign change of the classification
  double a_lo = 0.0, a_hi = 0.0;
  double prev = 1e-3;
  bool prev_over = overshoots(prev);
  if (prev_over)
    throw std::runtime_error("shoot: bracket failure, a = 1e-3 already overshoots");
  for (double a = 2e-3; a <= 1.001e8; a *= 2.0) {
    const bool over = overshoots(a);
    if (over) {
      a_lo = prev;
      a_hi = a;
      break;
    }
    prev = a;
  }
  if (a_hi == 0.0)
    throw std::runtime_error("shoot: no overshoot found up to a = 1e8");

  for (int it = 0; it < kMaxBisect; ++it) {
    const double mid = 0.5 * (a_lo + a_hi);
    if (mid == a_lo || mid == a_hi) break;
    if (overshoots(mid))
      a_hi = mid;
    else
      a_lo = mid;
    if ((a_hi - a_lo) <= 1e-15 * a_hi) break;
  }
  if (trace) {
    trace->bracket_lo = a_lo;
    trace->bracket_hi = a_hi;
  }

  const double a_star = a_lo;  // undershoot side: u stays positive
  IntegrationResult res = integrate(ode, a_star, rtol, rtol * a_star, true);
  if (res.hit_zero)
    throw std::runtime_error("shoot: converged parameter still overshoots");

  RadialProfile prof;
  prof.params = params;
  prof.source = ProfileSource::shooting;
  prof.shoot_param = a_star;
  prof.boundary_slope = res.w_end;
  prof.grid.reserve(res.rs.size() + 2);
  prof.values.reserve(res.rs.size() + 2);
  prof.derivs.reserve(res.rs.size() + 2);
  prof.grid.push_back(0.0);
  prof.values.push_back(a_star);
  prof.derivs.push_back(0.0);
  for (size_t i = 0; i < res.rs.size(); ++i) {
    prof.grid.push_back(res.rs[i]);
    prof.values.push_back(res.us[i]);
    prof.derivs.push_back(res.ws[i]);
  }
  prof.grid.push_back(1.0);
  prof.values.push_back(0.0);
  prof.derivs.push_back(res.w_end);

  const double gap = std::abs(extrapolate(res));
  if (trace) trace->endpoint_gap = gap;
  if (gap > tol * std::max(1.0, a_star))
    throw std::runtime_error("shoot: endpoint mismatch exceeds tolerance");
  return prof;
}

RadialProfile solve_profile(const ProblemParams& params, double tol) {
  if (auto cf = closed_form_profile(params)) return *cf;
  return shoot(params, tol);
}

double profile_second_derivative(const RadialProfile& profile, double r,
                                 double u, double du) {
  const double s = profile.params.s, p = profile.params.p;
  const int n = profile.params.dim;
  const double two_s = std::pow(2.0, s);
  if (r < 1e-12) {
    return -two_s * std::pow(std::max(u, 0.0), p - 1.0) / n;
  }
  if (r > 1.0 - 1e-12) {
    // u ~ K(1-r): forcing tends to 2^{-s} K^{p-1} * lim (1-r)^{p-1-s}
    const double K = -profile.boundary_slope;
    const double excess = p - 1.0 - s;
    double forcing = 0.0;
    if (std::abs(excess) < 1e-13)
      forcing = std::pow(K, p - 1.0);  // 2^s * K^{p-1} * 2^{-s}
    else if (excess < 0.0)
      forcing = std::numeric_limits<double>::infinity();
    return -(n - 1) / r * du - forcing;
  }
  return -(n - 1) / r * du -
         two_s * std::pow(std::max(u, 0.0), p - 1.0) *
             std::pow(1.0 - r * r, -s);
}

std::pair<double, double> evaluate_profile(const RadialProfile& profile,
                                           double r) {
  if (r < 0.0 || r > 1.0)
    throw std::out_of_range("evaluate_profile: r outside [0, 1]");
  const auto& g = profile.grid;
  if (r <= g.front()) return {profile.values.front(), profile.derivs.front()};
  if (r >= g.back()) return {profile.values.back(), profile.derivs.back()};
  const auto it = std::upper_bound(g.begin(), g.end(), r);
  const size_t i = static_cast<size_t>(it - g.begin()) - 1;
  const double r0 = g[i], r1 = g[i + 1];
  const double h = r1 - r0;
  const double t = (r - r0) / h;
  const double u0 = profile.values[i], u1 = profile.values[i + 1];
  const double d0 = profile.derivs[i] * h, d1 = profile.derivs[i + 1] * h;

  const bool last = (i + 2 == g.size());
  if (!last && i > 0) {
    // quintic Hermite with curvatures supplied by the ODE
    const double c0 = profile_second_derivative(profile, r0, u0,
                                                profile.derivs[i]) * h * h;
    const double c1 = profile_second_derivative(profile, r1, u1,
                                                profile.derivs[i + 1]) * h * h;
    if (std::isfinite(c0) && std::isfinite(c1)) {
      const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
      const double h00 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
      const double h10 = t - 6 * t3 + 8 * t4 - 3 * t5;
      const double h20 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
      const double h01 = 10 * t3 - 15 * t4 + 6 * t5;
      const double h11 = -4 * t3 + 7 * t4 - 3 * t5;
      const double h21 = 0.5 * (t3 - 2 * t4 + t5);
      const double u = h00 * u0 + h10 * d0 + h20 * c0 + h01 * u1 + h11 * d1 +
                       h21 * c1;
      const double g00 = -30 * t2 + 60 * t3 - 30 * t4;
      const double g10 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
      const double g20 = 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4);
      const double g01 = 30 * t2 - 60 * t3 + 30 * t4;
      const double g11 = -12 * t2 + 28 * t3 - 15 * t4;
      const double g21 = 0.5 * (3 * t2 - 8 * t3 + 5 * t4);
      const double dudt = g00 * u0 + g10 * d0 + g20 * c0 + g01 * u1 +
                          g11 * d1 + g21 * c1;
      return {u, dudt / h};
    }
  }
  // cubic Hermite fallback (first/last interval)
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  const double u = h00 * u0 + h10 * d0 + h01 * u1 + h11 * d1;
  const double dudt = (6 * t2 - 6 * t) * u0 + (3 * t2 - 4 * t + 1) * d0 +
                      (-6 * t2 + 6 * t) * u1 + (3 * t2 - 2 * t) * d1;
  return {u, dudt / h};
}

double profile_residual(const RadialProfile& profile) {
  const double s = profile.params.s, p = profile.params.p;
  const int n = profile.params.dim;
  const double two_s = std::pow(2.0, s);
  auto integrand = [&](double r, double u) {
    return two_s * std::pow(r, n - 1) * std::pow(std::max(u, 0.0), p - 1.0) *
           std::pow(1.0 - r * r, -s);
  };
  double acc = 0.0;  // \int_0^{r_i} 2^s t^{N-1} u^{p-1} (1-t^2)^{-s} dt
  double worst = 0.0;
  const auto& g = profile.grid;
  for (size_t i = 1; i + 1 < g.size(); ++i) {
    // Simpson over [g_{i-1}, g_i] with the Hermite midpoint
    const double r0 = g[i - 1], r1 = g[i];
    const double h = r1 - r0;
    const double rm = 0.5 * (r0 + r1);
    const double um = evaluate_profile(profile, rm).first;
    acc += h / 6.0 *
           (integrand(r0, profile.values[i - 1]) + 4.0 * integrand(rm, um) +
            integrand(r1, profile.values[i]));
    const double r = g[i];
    if (r > 1.0 - kEndGap) break;
    const double w_pred = -std::pow(r, 1.0 - n) * acc;
    const double res = std::abs(profile.derivs[i] - w_pred) /
                       (1.0 + std::abs(profile.derivs[i]));
    worst = std::max(worst, res);
  }
  return worst;
}

int critical_point_count(const RadialProfile& profile) {
  const int n = profile.params.dim;
  int count = 0;
  double prev = 0.0;
  bool have_prev = false;
  for (size_t i = 0; i + 1 < profile.grid.size(); ++i) {
    const double r = profile.grid[i];
    // d/dr [(1+r)^{N-2} u] = (1+r)^{N-3} [(N-2) u + (1+r) u']
    const double d = (n - 2) * profile.values[i] + (1.0 + r) * profile.derivs[i];
    if (have_prev && d * prev < 0.0) ++count;
    if (d != 0.0) {
      prev = d;
      have_prev = true;
    }
  }
  return count;
}

void write_profile(std::ostream& os, const RadialProfile& profile) {
  os << std::setprecision(17);
  os << "# hslab radial profile\n";
  os << "# dim " << profile.params.dim << "\n";
  os << "# s " << profile.params.s << "\n";
  os << "# p " << profile.params.p << "\n";
  os << "# family " << family_name(profile.params.family) << "\n";
  os << "# source "
     << (profile.source == ProfileSource::closed_form ? "closed_form"
                                                      : "shooting")
     << "\n";
  os << "# shoot_param " << profile.shoot_param << "\n";
  os << "# boundary_slope " << profile.boundary_slope << "\n";
  os << "# columns r u du\n";
  for (size_t i = 0; i < profile.grid.size(); ++i)
    os << profile.grid[i] << " " << profile.values[i] << " "
       << profile.derivs[i] << "\n";
}

RadialProfile read_profile(std::istream& is) {
  RadialProfile prof;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "dim") hs >> prof.params.dim;
      else if (key == "s") hs >> prof.params.s;
      else if (key == "p") hs >> prof.params.p;
      else if (key == "shoot_param") hs >> prof.shoot_param;
      else if (key == "boundary_slope") hs >> prof.boundary_slope;
      else if (key == "source") {
        std::string v;
        hs >> v;
        prof.source = (v == "closed_form") ? ProfileSource::closed_form
                                           : ProfileSource::shooting;
      }
      continue;
    }
    std::istringstream ls(line);
    double r, u, du;
    if (ls >> r >> u >> du) {
      prof.grid.push_back(r);
      prof.values.push_back(u);
      prof.derivs.push_back(du);
    }
  }
  if (prof.params.dim >= 2)
    prof.params.family = detect_family(prof.params.dim, prof.params.p);
  return prof;
}

}  // namespace hslab
