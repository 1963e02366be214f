#include "hslab/halfspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hslab/quadrature.hpp"
#include "hslab/special.hpp"

namespace hslab {

namespace {

// grading map [0,1) -> [0,inf): quadratic cluster at 0, stretch to infinity
double phi(double t) { return t * t / (1.0 - t); }
double dphi(double t) {
  const double om = 1.0 - t;
  return t * (2.0 - t) / (om * om);
}
double phi_inv(double x) {
  if (x <= 0.0) return 0.0;
  return 0.5 * (std::sqrt(x * x + 4.0 * x) - x);
}

}  // namespace

IntegralResult integrate_cylindrical(
    const std::function<double(double, double)>& f, const ProblemParams& params,
    double tol) {
  const int n = params.dim;
  const double omega = (n == 2) ? 2.0 : sphere_area(n - 2);
  // N = 2: the "cylinder" S^0 has measure 2 (two half-lines x_1 >< 0)

  auto mapped = [&](double tr, double tn) {
    const double r = phi(tr), xn = phi(tn);
    const double v = f(r, xn);
    if (!std::isfinite(v)) return 0.0;
    return v * std::pow(r, n - 2) * dphi(tr) * dphi(tn);
  };

  // pilot pass for the overall scale
  const double t32 = phi_inv(32.0);
  QuadResult pilot = integrate_2d(mapped, 0.0, t32, 0.0, t32, 1e-300, 1e-4);
  const double scale = std::max(std::abs(pilot.value), 1e-300);

  // outer radius from the sampled decay of the arc mass
  auto arc_mass = [&](double rho) {
    double m = 0.0;
    for (int j = 0; j < 8; ++j) {
      const double th = M_PI * (j + 0.5) / 16.0;
      const double v = f(rho * std::sin(th), rho * std::cos(th));
      if (std::isfinite(v)) m = std::max(m, std::abs(v));
    }
    return m * std::pow(rho, n - 2) * rho * 0.5 * M_PI;
  };
  double R = 64.0;
  double tail = 0.0;
  while (R < 1e8) {
    const double g1 = arc_mass(0.5 * R), g2 = arc_mass(R);
    if (g2 <= 0.0) {
      tail = 0.0;
      break;
    }
    if (g1 > g2) {
      const double q = std::log(g1 / g2) / std::log(2.0);
      if (q > 1.05) {
        tail = g2 * R / (q - 1.0);
        if (tail < 0.1 * tol * scale) break;
      }
    }
    R *= 2.0;
  }

  const double tR = phi_inv(R);
  QuadResult q2 = integrate_2d(mapped, 0.0, tR, 0.0, tR, 0.1 * tol * scale, tol);
  if (!q2.converged && q2.error > 100.0 * tol * std::abs(q2.value))
    throw std::runtime_error("integrate_cylindrical: refinement did not converge");

  IntegralResult out;
  out.value = omega * q2.value;
  out.error_estimate = omega * (q2.error + tail);
  out.truncation_radius = R;
  out.refinement_levels = q2.levels;
  return out;
}

HalfSpaceExtremal::HalfSpaceExtremal(const ProblemParams& params,
                                     const RadialProfile& profile)
    : params_(params), profile_(profile) {
  analytic_ = (profile.source == ProfileSource::closed_form &&
               params.family != Family::general);
  if (params_.family == Family::explicit_2_over_n)
    c_ = std::pow(2.0 * params_.dim, 0.5 * params_.dim);
  else if (params_.family == Family::explicit_4_over_n)
    c_ = std::pow(params_.dim * (params_.dim + 2.0), 0.25 * params_.dim);
  d2u0_ = -std::pow(2.0, params_.s) *
          std::pow(profile_.shoot_param, params_.p - 1.0) / params_.dim;
}

double HalfSpaceExtremal::value(double r, double xn) const {
  const int n = params_.dim;
  if (analytic_) {
    const double q = (params_.family == Family::explicit_2_over_n)
                         ? (1.0 + xn) * (1.0 + xn) + r * r
                         : 1.0 + r * r + xn * xn;
    return c_ * xn * std::pow(q, -0.5 * n);
  }
  const double d = r * r + (1.0 + xn) * (1.0 + xn);
  const double rho = std::sqrt(std::max(0.0, 1.0 - 4.0 * xn / d));
  const double jac = std::pow(2.0 / d, 0.5 * (n - 2));
  return jac * evaluate_profile(profile_, std::min(rho, 1.0)).first;
}

std::array<double, 2> HalfSpaceExtremal::gradient(double r, double xn) const {
  const int n = params_.dim;
  if (analytic_) {
    const bool fam2 = (params_.family == Family::explicit_2_over_n);
    const double q = fam2 ? (1.0 + xn) * (1.0 + xn) + r * r
                          : 1.0 + r * r + xn * xn;
    const double qa = std::pow(q, -0.5 * n);
    const double qb = qa / q;
    const double ur = -c_ * n * xn * r * qb;
    const double cross = fam2 ? (1.0 + xn) : xn;
    const double un = c_ * qa - c_ * n * xn * cross * qb;
    return {ur, un};
  }
  const double d = r * r + (1.0 + xn) * (1.0 + xn);
  const double rho2 = std::max(0.0, 1.0 - 4.0 * xn / d);
  const double rho = std::sqrt(rho2);
  const double jac = std::pow(2.0 / d, 0.5 * (n - 2));
  const double yt = 2.0 * r / d;           // |y'|
  const double ypn = 2.0 * (1.0 + xn) / d; // 1 + y_N
  const auto [u, du] = evaluate_profile(profile_, std::min(rho, 1.0));
  if (rho < 1e-8) {
    // xi(rho)/rho -> u''(0) - (N-2) u(0)
    const double xi_slope = d2u0_ - (n - 2) * profile_.shoot_param;
    const double du_slope = d2u0_;  // u'(rho)/rho
    const double ur = jac * 0.5 * yt * xi_slope;
    const double un =
        jac * 0.5 * (ypn * xi_slope - du_slope * (4.0 / d));
    return {ur, un};
  }
  const double xi = du * (1.0 - rho2) - (n - 2) * rho * u;
  const double ur = jac * 0.5 * yt / rho * xi;
  const double un = jac * 0.5 / rho * (ypn * xi - du * 4.0 / d);
  return {ur, un};
}

double HalfSpaceExtremal::second_rr(double r, double xn) const {
  if (!analytic_)
    throw std::logic_error("second derivatives need a closed-form backend");
  const int n = params_.dim;
  const double q = (params_.family == Family::explicit_2_over_n)
                       ? (1.0 + xn) * (1.0 + xn) + r * r
                       : 1.0 + r * r + xn * xn;
  const double qb = std::pow(q, -0.5 * n - 1.0);
  return -c_ * n * xn * qb + c_ * n * (n + 2.0) * xn * r * r * qb / q;
}

double HalfSpaceExtremal::second_rn(double r, double xn) const {
  if (!analytic_)
    throw std::logic_error("second derivatives need a closed-form backend");
  const int n = params_.dim;
  const bool fam2 = (params_.family == Family::explicit_2_over_n);
  const double q = fam2 ? (1.0 + xn) * (1.0 + xn) + r * r
                        : 1.0 + r * r + xn * xn;
  const double qb = std::pow(q, -0.5 * n - 1.0);
  const double cross = fam2 ? xn * (1.0 + xn) : xn * xn;
  return -c_ * n * r * qb + c_ * n * (n + 2.0) * r * cross * qb / q;
}

MuReport mu_half_space(const ProblemParams& params, const RadialProfile& profile,
                       double tol) {
  const HalfSpaceExtremal ex(params, profile);
  const double s = params.s, p = params.p;
  IntegralResult eg = integrate_cylindrical(
      [&](double r, double xn) {
        const auto g = ex.gradient(r, xn);
        return g[0] * g[0] + g[1] * g[1];
      },
      params, tol);
  IntegralResult ew = integrate_cylindrical(
      [&](double r, double xn) {
        return std::pow(xn, -s) * std::pow(ex.value(r, xn), p);
      },
      params, tol);
  MuReport rep;
  rep.energy_gradient = eg.value;
  rep.energy_weighted = ew.value;
  rep.dual_gap = std::abs(eg.value - ew.value) / std::abs(eg.value);
  rep.value = std::pow(eg.value, (p - 2.0) / p);
  return rep;
}

PohozaevReport pohozaev_report(const ProblemParams& params,
                               const RadialProfile& profile, double tol) {
  const HalfSpaceExtremal ex(params, profile);
  const int n = params.dim;
  const double s = params.s, p = params.p;
  const double itol = 0.2 * tol;

  IntegralResult grad_w = integrate_cylindrical(  // \int x_N |grad U|^2
      [&](double r, double xn) {
        const auto g = ex.gradient(r, xn);
        return xn * (g[0] * g[0] + g[1] * g[1]);
      },
      params, itol);
  IntegralResult shear = integrate_cylindrical(  // 2 \int x_N (d_{x_1} U)^2
      [&](double r, double xn) {
        const auto g = ex.gradient(r, xn);
        return 2.0 * xn * g[0] * g[0] / (n - 1.0);
      },
      params, itol);
  IntegralResult i2 = integrate_cylindrical(
      [&](double r, double xn) {
        return std::pow(xn, 1.0 - s) * std::pow(ex.value(r, xn), p);
      },
      params, itol);

  PohozaevReport rep;
  rep.I2 = i2.value;
  rep.I1 = -grad_w.value + shear.value;
  const double denom = std::abs(rep.I2);
  rep.residual_main =
      std::abs(rep.I1 + (2.0 * (n - 1) - s) / ((n - 1) * p) * rep.I2) / denom;
  rep.residual_tv1 = std::abs(rep.I2 - grad_w.value) / denom;
  rep.residual_shear =
      std::abs(shear.value - (p + 2.0 - s) / ((n - 1) * p) * rep.I2) / denom;
  return rep;
}

double curvature_slope(const ProblemParams& params, const RadialProfile& profile,
                       double tol) {
  PohozaevReport rep = pohozaev_report(params, profile, tol);
  const double slope = rep.I1 + 2.0 / params.p * rep.I2;
  const double target = params.s / ((params.dim - 1) * params.p) * rep.I2;
  if (std::abs(slope - target) > 100.0 * tol * std::abs(rep.I2))
    throw std::runtime_error("curvature_slope: identity check failed");
  if (!(slope > 0.0))
    throw std::runtime_error("curvature_slope: slope not positive");
  return slope;
}

DiscriminantReport discriminant_report(const ProblemParams& params,
                                       double tol) {
  if (params.family == Family::general)
    throw std::invalid_argument(
        "discriminant_report: closed-form family required");
  if (params.dim < 3)
    throw std::invalid_argument("discriminant_report: dimension must be >= 3");

  const int n = params.dim;
  const double s = params.s, p = params.p;
  const bool fam2 = (params.family == Family::explicit_2_over_n);
  const double c = fam2 ? std::pow(2.0 * n, 0.5 * n)
                        : std::pow(n * (n + 2.0), 0.25 * n);
  // Z = r^{-1} dU/dr and its derivatives, closed form in both families
  auto zfun = [&](double r, double xn, double& z, double& zr, double& zn) {
    const double q = fam2 ? (1.0 + xn) * (1.0 + xn) + r * r
                          : 1.0 + r * r + xn * xn;
    const double qb = std::pow(q, -0.5 * n - 1.0);
    const double cross = fam2 ? xn * (1.0 + xn) : xn * xn;
    z = -c * n * xn * qb;
    zr = c * n * (n + 2.0) * xn * r * qb / q;
    zn = -c * n * qb + c * n * (n + 2.0) * cross * qb / q;
  };
  const RadialProfile prof = *closed_form_profile(params);
  const HalfSpaceExtremal ex(params, prof);
  const double itol = 0.1 * tol;

  IntegralResult i3 = integrate_cylindrical(
      [&](double r, double xn) {
        const auto g = ex.gradient(r, xn);
        const double g2 = g[0] * g[0] + g[1] * g[1];
        return -0.5 * xn * xn * g2 + r * r / (6.0 * (n - 1.0)) * g2 +
               3.0 * xn * xn * g[0] * g[0] / (n - 1.0);
      },
      params, itol);
  IntegralResult i4 = integrate_cylindrical(
      [&](double r, double xn) {
        const double up = std::pow(ex.value(r, xn), p);
        return 0.5 * std::pow(xn, 2.0 - s) * up -
               r * r / (6.0 * (n - 1.0)) * std::pow(xn, -s) * up;
      },
      params, itol);
  IntegralResult qg = integrate_cylindrical(
      [&](double r, double xn) {
        double z, zr, zn;
        zfun(r, xn, z, zr, zn);
        return xn * xn * std::pow(r, 4) * (zr * zr + zn * zn);
      },
      params, itol);
  IntegralResult qw = integrate_cylindrical(
      [&](double r, double xn) {
        double z, zr, zn;
        zfun(r, xn, z, zr, zn);
        return std::pow(xn, 2.0 - s) * std::pow(r, 4) *
               std::pow(ex.value(r, xn), p - 2.0) * z * z;
      },
      params, itol);
  IntegralResult lint = integrate_cylindrical(
      [&](double r, double xn) {
        double z, zr, zn;
        zfun(r, xn, z, zr, zn);
        // x_N^2 [r U_r - r^2 U_rr] Z = -x_N^2 r^3 Z_r Z
        return -xn * xn * r * r * r * zr * z;
      },
      params, itol);

  DiscriminantReport rep;
  rep.I3 = i3.value;
  rep.I4 = i4.value;
  rep.const_coeff = rep.I3 + 2.0 / p * rep.I4;
  rep.const_coeff_alt = rep.I3 + 2.0 / (p + 1.0) * rep.I4;
  const double nn = n * n - 1.0;
  rep.lin_coeff = 8.0 / nn * lint.value;
  const double qdiff = qg.value - (p - 1.0) * qw.value;
  rep.quad_coeff = 2.0 / nn * qdiff;
  rep.D = 8.0 / nn * lint.value * lint.value - rep.const_coeff * qdiff;
  rep.D_alt =
      8.0 / nn * lint.value * lint.value - rep.const_coeff_alt * qdiff;
  if (rep.quad_coeff != 0.0) {
    rep.A_star = -rep.lin_coeff / (2.0 * rep.quad_coeff);
    rep.min_value = rep.const_coeff -
                    rep.lin_coeff * rep.lin_coeff / (4.0 * rep.quad_coeff);
  } else {
    rep.A_star = 0.0;
    rep.min_value = rep.const_coeff;
  }
  rep.attainable = rep.min_value < 0.0;
  return rep;
}

std::optional<ClosedFormDiscriminant> discriminant_closed_form(Family family,
                                                               int dim) {
  if (dim < 3) return std::nullopt;
  const double n = dim;
  const double omega = sphere_area(dim - 2);
  ClosedFormDiscriminant cf;
  if (family == Family::explicit_2_over_n) {
    cf.const_coeff = -std::sqrt(M_PI) * std::pow(n, n) *
                     ((n - 26.0) * n - 8.0) * gamma_fn(0.5 * (n + 1.0)) /
                     (4.0 * (n - 2.0) * (n - 1.0) * (n - 1.0) * (n + 1.0) *
                      gamma_fn(0.5 * n + 2.0)) *
                     omega;
    const double g = gamma_fn(0.5 * (n + 3.0)) / gamma_fn(0.5 * n + 2.0);
    cf.D = M_PI * std::pow(n, 2.0 * n + 1.0) * (n + 2.0) *
           ((n - 14.0) * n - 56.0) * g * g /
           (4.0 * (n - 2.0) * (n - 2.0) * std::pow(n * n - 1.0, 3)) * omega *
           omega;
    return cf;
  }
  if (family == Family::explicit_4_over_n) {
    cf.const_coeff = M_PI * std::pow(2.0, -n - 2.0) *
                     std::pow(n * (n + 2.0), 0.5 * n) * (5.0 * n + 4.0) /
                     ((n - 2.0) * (n * n - 1.0)) * omega;
    cf.D = -M_PI * M_PI * std::pow(2.0, -2.0 * n - 3.0) * n *
           std::pow(n * (n + 2.0), n) * (n + 8.0) /
           ((n - 2.0) * (n - 2.0) * (n * n - 1.0)) * omega * omega;
    return cf;
  }
  return std::nullopt;
}

}  // namespace hslab
