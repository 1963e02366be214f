#include "hslab/params.hpp"

#include <cmath>

namespace hslab {

Family detect_family(int dim, double p) {
  const double n = static_cast<double>(dim);
  if (std::abs(p - (2.0 + 2.0 / n)) <= kFamilyDetectTol * p)
    return Family::explicit_2_over_n;
  if (std::abs(p - (2.0 + 4.0 / n)) <= kFamilyDetectTol * p)
    return Family::explicit_4_over_n;
  return Family::general;
}

ProblemParams make_params_from_s(int dim, double s) {
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  if (dim == 2)
    throw std::invalid_argument(
        "for N = 2 the exponent s is fixed to 2; construct from p instead");
  if (!(s > 0.0 && s < 2.0))
    throw std::invalid_argument("s out of range: need s in (0, 2) for N >= 3");
  ProblemParams params;
  params.dim = dim;
  params.s = s;
  params.p = 2.0 * (dim - s) / (dim - 2.0);
  params.family = detect_family(dim, params.p);
  return params;
}

ProblemParams make_params_from_p(int dim, double p) {
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  ProblemParams params;
  params.dim = dim;
  params.p = p;
  if (dim == 2) {
    if (!(p > 2.0))
      throw std::invalid_argument("p out of range: need p > 2 for N = 2");
    params.s = 2.0;
  } else {
    // invert p = 2(N - s)/(N - 2)
    const double s = dim - 0.5 * p * (dim - 2.0);
    if (!(s > 0.0 && s < 2.0))
      throw std::invalid_argument("p out of range: implied s not in (0, 2)");
    params.s = s;
  }
  params.family = detect_family(dim, p);
  return params;
}

ProblemParams make_family_params(int dim, Family family) {
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  const double n = static_cast<double>(dim);
  switch (family) {
    case Family::explicit_2_over_n:
      return make_params_from_p(dim, 2.0 + 2.0 / n);
    case Family::explicit_4_over_n:
      return make_params_from_p(dim, 2.0 + 4.0 / n);
    default:
      throw std::invalid_argument("make_family_params needs an explicit family");
  }
}

std::string family_name(Family f) {
  switch (f) {
    case Family::explicit_2_over_n: return "2overN";
    case Family::explicit_4_over_n: return "4overN";
    default: return "general";
  }
}

}  // namespace hslab
