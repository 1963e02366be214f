#include "hslab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hslab {

namespace {

// G7,K15 nodes/weights on [-1,1]: {abscissa, Gauss weight, Kronrod weight}.
constexpr double kNW[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529}};

template <class F>
double g7k15(const F& f, double a, double b, double& err) {
  const double c = 0.5 * (a + b);
  const double m = 0.5 * (b - a);
  const double y0 = f(c);
  double g7 = kNW[0][1] * y0;
  double k15 = kNW[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double dx = m * kNW[i][0];
    const double yi = f(c + dx) + f(c - dx);
    g7 += kNW[i][1] * yi;
    k15 += kNW[i][2] * yi;
  }
  g7 *= m;
  k15 *= m;
  const double d = std::abs(k15 - g7);
  err = std::min(d, 200.0 * d * std::sqrt(200.0 * d));
  return k15;
}

struct Interval {
  double a, b, value, error;
  int level;
};

}  // namespace

QuadResult integrate_1d(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, double rel_tol,
                        int max_intervals) {
  QuadResult res;
  if (a == b) return res;

  std::vector<Interval> segs;
  double err0;
  double v0 = g7k15(f, a, b, err0);
  segs.push_back({a, b, v0, err0, 0});
  double total = v0, total_err = err0;

  while (static_cast<int>(segs.size()) < max_intervals) {
    if (total_err <= abs_tol || total_err <= rel_tol * std::abs(total)) break;
    // split the worst interval
    size_t worst = 0;
    for (size_t i = 1; i < segs.size(); ++i)
      if (segs[i].error > segs[worst].error) worst = i;
    Interval seg = segs[worst];
    const double mid = 0.5 * (seg.a + seg.b);
    if (mid == seg.a || mid == seg.b) break;  // interval exhausted
    double e1, e2;
    const double v1 = g7k15(f, seg.a, mid, e1);
    const double v2 = g7k15(f, mid, seg.b, e2);
    total += v1 + v2 - seg.value;
    total_err += e1 + e2 - seg.error;
    segs[worst] = {seg.a, mid, v1, e1, seg.level + 1};
    segs.push_back({mid, seg.b, v2, e2, seg.level + 1});
    res.levels = std::max(res.levels, seg.level + 1);
  }
  // recompute the error sum to avoid drift from the incremental updates
  total = 0.0;
  total_err = 0.0;
  for (const auto& s : segs) {
    total += s.value;
    total_err += s.error;
  }
  res.value = total;
  res.error = total_err;
  res.converged =
      total_err <= abs_tol || total_err <= rel_tol * std::abs(total) * 10.0;
  return res;
}

QuadResult integrate_2d(const std::function<double(double, double)>& f,
                        double ax, double bx, double ay, double by,
                        double abs_tol, double rel_tol) {
  const double inner_abs = abs_tol / std::max(1.0, 10.0 * (by - ay));
  double inner_err_acc = 0.0;
  bool inner_ok = true;
  auto outer = [&](double y) {
    QuadResult in = integrate_1d([&](double x) { return f(x, y); }, ax, bx,
                                 inner_abs, rel_tol * 0.1);
    inner_err_acc += in.error;
    inner_ok = inner_ok && in.converged;
    return in.value;
  };
  QuadResult out = integrate_1d(outer, ay, by, abs_tol, rel_tol);
  out.error += inner_abs * (by - ay);
  out.converged = out.converged && inner_ok;
  return out;
}

namespace {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev initial guess
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

struct SphereQuad {
  const std::function<double(const double*)>& f;
  int order;
  std::vector<double> x;
  std::vector<double> gx, gw;

  double rec(int m, int idx, double scale) {
    if (m == 0) {
      x[idx] = scale;
      const double fp = f(x.data());
      x[idx] = -scale;
      const double fm = f(x.data());
      return fp + fm;
    }
    if (m == 1) {
      const int n = 2 * order;
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        const double phi = 2.0 * M_PI * i / n;
        x[idx] = scale * std::cos(phi);
        x[idx + 1] = scale * std::sin(phi);
        sum += f(x.data());
      }
      return sum * (2.0 * M_PI / n);
    }
    double sum = 0.0;
    for (int i = 0; i < order; ++i) {
      const double theta = 0.5 * M_PI * (gx[i] + 1.0);
      const double c = std::cos(theta), s = std::sin(theta);
      x[idx] = scale * c;
      const double inner = rec(m - 1, idx + 1, scale * s);
      sum += 0.5 * M_PI * gw[i] * std::pow(s, m - 1) * inner;
    }
    return sum;
  }
};

}  // namespace

double integrate_sphere(int m, const std::function<double(const double*)>& f,
                        int order) {
  SphereQuad q{f, order, std::vector<double>(m + 1, 0.0), {}, {}};
  gauss_legendre(order, q.gx, q.gw);
  return q.rec(m, 0, 1.0);
}

void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
  gauss_legendre(n, x, w);
  for (int i = 0; i < n; ++i) {
    x[i] = 0.5 * (x[i] + 1.0);
    w[i] *= 0.5;
  }
}

}  // namespace hslab
