#include "hslab/planar.hpp"

#include <cmath>
#include <stdexcept>

#include "hslab/quadrature.hpp"

namespace hslab {

namespace {

const Complex kI(0.0, 1.0);

double ray_distance(Complex z, double theta) {
  const Complex zeta = z * std::exp(Complex(0.0, -theta));
  if (zeta.real() >= 0.0) return std::abs(zeta.imag());
  return std::abs(z);
}

// adaptive 2D integral over a box with a relative target; the absolute
// floor comes from a coarse pilot pass
QuadResult integrate_box(const std::function<double(double, double)>& f,
                         double ax, double bx, double ay, double by,
                         double tol) {
  QuadResult pilot = integrate_2d(f, ax, bx, ay, by, 1e-300, 1e-4);
  const double scale = std::max(std::abs(pilot.value), 1e-300);
  return integrate_2d(f, ax, bx, ay, by, 0.1 * tol * scale, tol);
}

}  // namespace

ConformalDomain make_disk() {
  ConformalDomain d;
  d.id = "disk";
  d.riemann_map = [](Complex z) { return z; };
  d.map_derivative = [](Complex) { return Complex(1.0, 0.0); };
  d.inverse_map = [](Complex w) { return w; };
  d.contains = [](Complex z) { return std::abs(z) < 1.0; };
  d.boundary_distance = [](Complex z) { return 1.0 - std::abs(z); };
  d.convex = true;
  return d;
}

ConformalDomain make_half_plane() {
  ConformalDomain d;
  d.id = "half_plane";
  d.riemann_map = [](Complex z) { return (z - kI) / (z + kI); };
  d.map_derivative = [](Complex z) {
    const Complex q = z + kI;
    return 2.0 * kI / (q * q);
  };
  d.inverse_map = [](Complex w) { return kI * (1.0 + w) / (1.0 - w); };
  d.contains = [](Complex z) { return z.imag() > 0.0; };
  d.boundary_distance = [](Complex z) { return z.imag(); };
  d.convex = true;
  return d;
}

ConformalDomain make_strip(double height) {
  if (!(height > 0.0))
    throw std::invalid_argument("make_strip: height must be positive");
  const double h = height;
  ConformalDomain d;
  d.id = "strip";
  auto up = [h](Complex z) { return std::exp(M_PI * z / h); };
  d.riemann_map = [up](Complex z) {
    const Complex g = up(z);
    return (g - kI) / (g + kI);
  };
  d.map_derivative = [up, h](Complex z) {
    const Complex g = up(z);
    const Complex q = g + kI;
    return (M_PI / h) * g * 2.0 * kI / (q * q);
  };
  d.inverse_map = [h](Complex w) {
    const Complex g = kI * (1.0 + w) / (1.0 - w);
    return (h / M_PI) * std::log(g);
  };
  d.contains = [h](Complex z) { return z.imag() > 0.0 && z.imag() < h; };
  d.boundary_distance = [h](Complex z) {
    return std::min(z.imag(), h - z.imag());
  };
  d.convex = true;
  return d;
}

ConformalDomain make_sector(double angle) {
  if (!(angle > 0.0 && angle < 2.0 * M_PI))
    throw std::invalid_argument("make_sector: angle must lie in (0, 2 pi)");
  const double al = angle;
  ConformalDomain d;
  d.id = "sector";
  // branch of z^e with arg taken in (0, 2 pi) so reflex sectors work
  auto powp = [](Complex z, double e) {
    double th = std::arg(z);
    if (th <= 0.0) th += 2.0 * M_PI;
    return std::polar(std::pow(std::abs(z), e), th * e);
  };
  auto up = [al, powp](Complex z) { return powp(z, M_PI / al); };
  d.riemann_map = [up](Complex z) {
    const Complex g = up(z);
    return (g - kI) / (g + kI);
  };
  d.map_derivative = [up, al, powp](Complex z) {
    const Complex g = up(z);
    const Complex q = g + kI;
    return (M_PI / al) * powp(z, M_PI / al - 1.0) * 2.0 * kI / (q * q);
  };
  d.inverse_map = [al](Complex w) {
    const Complex g = kI * (1.0 + w) / (1.0 - w);
    return std::pow(g, al / M_PI);
  };
  d.contains = [al](Complex z) {
    if (std::abs(z) == 0.0) return false;
    double th = std::arg(z);
    if (th <= 0.0) th += 2.0 * M_PI;
    return th > 0.0 && th < al;
  };
  d.boundary_distance = [al](Complex z) {
    return std::min(ray_distance(z, 0.0), ray_distance(z, al));
  };
  d.convex = (angle <= M_PI);
  return d;
}

ConformalMap half_plane_to_disk() {
  ConformalMap m;
  m.forward = [](Complex z) { return (z - kI) / (z + kI); };
  m.derivative = [](Complex z) {
    const Complex q = z + kI;
    return 2.0 * kI / (q * q);
  };
  m.inverse = [](Complex w) { return kI * (1.0 + w) / (1.0 - w); };
  return m;
}

ConformalMap strip_to_half_plane(double height) {
  if (!(height > 0.0))
    throw std::invalid_argument("strip_to_half_plane: height must be positive");
  const double h = height;
  ConformalMap m;
  m.forward = [h](Complex z) { return std::exp(M_PI * z / h); };
  m.derivative = [h](Complex z) { return (M_PI / h) * std::exp(M_PI * z / h); };
  m.inverse = [h](Complex w) { return (h / M_PI) * std::log(w); };
  return m;
}

double harmonic_radius(const ConformalDomain& domain, Complex z) {
  if (!domain.contains(z))
    throw std::invalid_argument("harmonic_radius: point not interior");
  const Complex f = domain.riemann_map(z);
  const double fp = std::abs(domain.map_derivative(z));
  return (1.0 - std::norm(f)) / fp;
}

RadiusBoundsReport radius_bounds_check(const ConformalDomain& domain,
                                       const std::vector<Complex>& samples) {
  RadiusBoundsReport rep;
  rep.min_r_over_delta = 1e300;
  rep.max_r_over_delta = 0.0;
  for (const Complex& z : samples) {
    const double r = harmonic_radius(domain, z);
    const double delta = domain.boundary_distance(z);
    const double ratio = r / delta;
    rep.min_r_over_delta = std::min(rep.min_r_over_delta, ratio);
    rep.max_r_over_delta = std::max(rep.max_r_over_delta, ratio);
  }
  rep.lower_ok = rep.min_r_over_delta >= 1.0 - 1e-10;
  rep.upper_ok = !domain.convex || rep.max_r_over_delta <= 2.0 + 1e-10;
  return rep;
}

TestFunction2D make_bump(double cx, double cy, double radius) {
  if (!(radius > 0.0))
    throw std::invalid_argument("make_bump: radius must be positive");
  TestFunction2D u;
  u.cx = cx;
  u.cy = cy;
  u.radius = radius;
  u.value = [cx, cy, radius](double x, double y) {
    const double dx = x - cx, dy = y - cy;
    const double t2 = (dx * dx + dy * dy) / (radius * radius);
    if (t2 >= 1.0 - 1e-12) return 0.0;
    return std::exp(-1.0 / (1.0 - t2));
  };
  u.gradient = [cx, cy, radius](double x, double y) -> std::array<double, 2> {
    const double dx = x - cx, dy = y - cy;
    const double t2 = (dx * dx + dy * dy) / (radius * radius);
    if (t2 >= 1.0 - 1e-12) return {0.0, 0.0};
    const double om = 1.0 - t2;
    const double v = std::exp(-1.0 / om);
    // d/dx of -1/(1-t^2): -2 dx / (R^2 om^2)
    const double c = -2.0 * v / (radius * radius * om * om);
    return {c * dx, c * dy};
  };
  return u;
}

TestFunction2D multiply(const TestFunction2D& a, const TestFunction2D& b) {
  TestFunction2D u;
  const TestFunction2D& tight = (a.radius <= b.radius) ? a : b;
  u.cx = tight.cx;
  u.cy = tight.cy;
  u.radius = tight.radius;
  u.value = [a, b](double x, double y) {
    return a.value(x, y) * b.value(x, y);
  };
  u.gradient = [a, b](double x, double y) -> std::array<double, 2> {
    const double va = a.value(x, y), vb = b.value(x, y);
    const auto ga = a.gradient(x, y), gb = b.gradient(x, y);
    return {ga[0] * vb + va * gb[0], ga[1] * vb + va * gb[1]};
  };
  return u;
}

double quotient_J(const ConformalDomain& domain, const TestFunction2D& u,
                  const ProblemParams& params, double tol) {
  if (params.dim != 2)
    throw std::invalid_argument("quotient_J: planar module needs N = 2");
  const double s = params.s, p = params.p;
  const double ax = u.cx - u.radius, bx = u.cx + u.radius;
  const double ay = u.cy - u.radius, by = u.cy + u.radius;
  QuadResult num = integrate_box(
      [&](double x, double y) {
        const auto g = u.gradient(x, y);
        return g[0] * g[0] + g[1] * g[1];
      },
      ax, bx, ay, by, tol);
  QuadResult den = integrate_box(
      [&](double x, double y) {
        const double v = u.value(x, y);
        if (v == 0.0) return 0.0;
        const Complex z(x, y);
        if (!domain.contains(z)) return 0.0;
        const double r = harmonic_radius(domain, z);
        return std::pow(r, -s) * std::pow(std::abs(v), p);
      },
      ax, bx, ay, by, tol);
  if (den.value <= 0.0)
    throw std::runtime_error("quotient_J: vanishing weighted norm");
  return num.value / std::pow(den.value, 2.0 / p);
}

InvarianceReport invariance_check(const ConformalDomain& a,
                                  const ConformalDomain& b,
                                  const ConformalMap& map,
                                  const TestFunction2D& u,
                                  const ProblemParams& params, double tol) {
  if (params.dim != 2)
    throw std::invalid_argument("invariance_check: planar module needs N = 2");
  const double s = params.s, p = params.p;

  const double ax = u.cx - u.radius, bx = u.cx + u.radius;
  const double ay = u.cy - u.radius, by = u.cy + u.radius;
  QuadResult ea = integrate_box(
      [&](double x, double y) {
        const auto g = u.gradient(x, y);
        return g[0] * g[0] + g[1] * g[1];
      },
      ax, bx, ay, by, tol);
  QuadResult wa = integrate_box(
      [&](double x, double y) {
        const double v = u.value(x, y);
        if (v == 0.0 || !a.contains(Complex(x, y))) return 0.0;
        return std::pow(harmonic_radius(a, Complex(x, y)), -s) *
               std::pow(std::abs(v), p);
      },
      ax, bx, ay, by, tol);

  // bounding box of the image of the support under the map
  double ix = 1e300, jx = -1e300, iy = 1e300, jy = -1e300;
  auto absorb = [&](Complex w) {
    ix = std::min(ix, w.real());
    jx = std::max(jx, w.real());
    iy = std::min(iy, w.imag());
    jy = std::max(jy, w.imag());
  };
  for (int i = 0; i < 512; ++i) {
    const double th = 2.0 * M_PI * i / 512;
    const Complex z(u.cx + u.radius * std::cos(th),
                    u.cy + u.radius * std::sin(th));
    if (a.contains(z)) absorb(map.forward(z));
  }
  absorb(map.forward(Complex(u.cx, u.cy)));
  const double pad = 0.05 * std::max(jx - ix, jy - iy);
  ix -= pad;
  jx += pad;
  iy -= pad;
  jy += pad;

  auto pull = [&](double x, double y, Complex& z, double& v) {
    const Complex w(x, y);
    if (!b.contains(w)) return false;
    z = map.inverse(w);
    const double dz = std::hypot(z.real() - u.cx, z.imag() - u.cy);
    if (dz >= u.radius) return false;
    v = u.value(z.real(), z.imag());
    return v != 0.0;
  };
  QuadResult eb = integrate_box(
      [&](double x, double y) {
        Complex z;
        double v;
        if (!pull(x, y, z, v)) return 0.0;
        const auto g = u.gradient(z.real(), z.imag());
        const double fp = std::abs(map.derivative(z));
        return (g[0] * g[0] + g[1] * g[1]) / (fp * fp);
      },
      ix, jx, iy, jy, tol);
  QuadResult wb = integrate_box(
      [&](double x, double y) {
        Complex z;
        double v;
        if (!pull(x, y, z, v)) return 0.0;
        return std::pow(harmonic_radius(b, Complex(x, y)), -s) *
               std::pow(std::abs(v), p);
      },
      ix, jx, iy, jy, tol);

  InvarianceReport rep;
  rep.energy_a = ea.value;
  rep.energy_b = eb.value;
  rep.weighted_a = wa.value;
  rep.weighted_b = wb.value;
  rep.energy_residual = std::abs(ea.value - eb.value) / std::abs(ea.value);
  rep.weighted_residual = std::abs(wa.value - wb.value) / std::abs(wa.value);
  return rep;
}

double conformal_hardy_check(const ConformalDomain& domain,
                             const TestFunction2D& u, double tol) {
  const double ax = u.cx - u.radius, bx = u.cx + u.radius;
  const double ay = u.cy - u.radius, by = u.cy + u.radius;
  QuadResult energy = integrate_box(
      [&](double x, double y) {
        const auto g = u.gradient(x, y);
        return g[0] * g[0] + g[1] * g[1];
      },
      ax, bx, ay, by, tol);
  QuadResult hardy = integrate_box(
      [&](double x, double y) {
        const double v = u.value(x, y);
        if (v == 0.0 || !domain.contains(Complex(x, y))) return 0.0;
        const double r = harmonic_radius(domain, Complex(x, y));
        return v * v / (r * r);
      },
      ax, bx, ay, by, tol);
  const double margin = energy.value - hardy.value;
  if (margin < -tol * std::abs(energy.value))
    throw std::runtime_error("conformal_hardy_check: inequality violated");
  return margin;
}

}  // namespace hslab
