#pragma once

#include <stdexcept>
#include <string>

namespace hslab {

/// The two exponent families with closed-form extremals.
enum class Family { general, explicit_2_over_n, explicit_4_over_n };

/// Admissible exponent pair (s, p) for the weighted quotient in dimension N.
///
/// For N >= 3 the pair is tied by p = 2(N - s)/(N - 2) with s in (0, 2).
/// For N = 2 one has s = 2 and any p > 2.
struct ProblemParams {
  int dim = 0;       // N
  double s = 0.0;    // boundary-weight exponent
  double p = 0.0;    // power in the quotient denominator
  Family family = Family::general;
};

// Relative tolerance used to tag a constructed pair as one of the
// explicit families.
inline constexpr double kFamilyDetectTol = 1e-12;

ProblemParams make_params_from_s(int dim, double s);
ProblemParams make_params_from_p(int dim, double p);

/// Exact-family constructor: s and p are built from the integer dimension
/// (s = 1 + 2/N resp. 4/N) so family detection never drifts.
ProblemParams make_family_params(int dim, Family family);

Family detect_family(int dim, double p);

std::string family_name(Family f);

}  // namespace hslab
