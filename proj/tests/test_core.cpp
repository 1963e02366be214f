#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hslab/params.hpp"
#include "hslab/quadrature.hpp"
#include "hslab/report_io.hpp"
#include "hslab/special.hpp"

using namespace hslab;

TEST_CASE("exponent pairs from s") {
  const auto p1 = make_params_from_s(3, 5.0 / 3.0);
  CHECK(p1.p == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(p1.family == Family::explicit_2_over_n);

  const auto p2 = make_params_from_s(4, 1.0);
  CHECK(p2.p == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(p2.family == Family::explicit_4_over_n);

  CHECK_THROWS(make_params_from_s(3, 2.0));
  CHECK_THROWS(make_params_from_s(3, 0.0));
  CHECK_THROWS(make_params_from_s(1, 1.0));
  CHECK_THROWS(make_params_from_p(2, 2.0));
}

TEST_CASE("exponent round trip and defining identity") {
  for (int n = 3; n <= 12; ++n) {
    for (double s : {0.2, 0.7, 1.0, 1.3, 1.9}) {
      const auto a = make_params_from_s(n, s);
      const auto b = make_params_from_p(n, a.p);
      CHECK(std::abs(b.s - s) <= 1e-14 * s);
      CHECK(std::abs(a.p * (n - 2.0) - 2.0 * (n - a.s)) < 1e-12);
    }
  }
}

TEST_CASE("family constructors are exactly detected") {
  for (int n = 2; n <= 20; ++n) {
    const auto f2 = make_family_params(n, Family::explicit_2_over_n);
    CHECK(f2.family == Family::explicit_2_over_n);
    CHECK(detect_family(n, f2.p) == Family::explicit_2_over_n);
    const auto f4 = make_family_params(n, Family::explicit_4_over_n);
    CHECK(f4.family == Family::explicit_4_over_n);
    if (n >= 3) {
      CHECK(f2.s == doctest::Approx(1.0 + 2.0 / n).epsilon(1e-14));
      CHECK(f4.s == doctest::Approx(4.0 / n).epsilon(1e-14));
    }
  }
  CHECK(family_name(Family::explicit_2_over_n) == "2overN");
  CHECK(family_name(Family::explicit_4_over_n) == "4overN");
}

TEST_CASE("gamma function values and recurrence") {
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-12));
  CHECK_THROWS(gamma_fn(0.0));
  CHECK_THROWS(gamma_fn(-1.5));
  for (double x = 0.5; x <= 20.0; x += 0.37) {
    const double lhs = gamma_fn(x + 1.0);
    const double rhs = x * gamma_fn(x);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
  }
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sphere_area(1) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(2) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-13));
}

TEST_CASE("adaptive 1d quadrature") {
  auto res = integrate_1d([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  CHECK(res.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(res.converged);

  // integrable endpoint singularity
  res = integrate_1d([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                     1e-10);
  CHECK(res.value == doctest::Approx(2.0).epsilon(1e-8));

  res = integrate_1d([](double x) { return std::exp(-x * x); }, 0.0, 10.0,
                     1e-13);
  CHECK(res.value == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("iterated 2d quadrature on a separable integrand") {
  auto res = integrate_2d(
      [](double x, double y) { return std::exp(-x) * std::cos(y); }, 0.0, 3.0,
      0.0, 1.0, 1e-11);
  const double exact = (1.0 - std::exp(-3.0)) * std::sin(1.0);
  CHECK(res.value == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("sphere quadrature against polynomial moments") {
  // \oint x1^2 over S^{m} equals area/(m+1)
  for (int m : {1, 2, 3}) {
    const double got = integrate_sphere(
        m, [](const double* x) { return x[0] * x[0]; }, 24);
    CHECK(got == doctest::Approx(sphere_area(m) / (m + 1)).epsilon(1e-10));
  }
}

TEST_CASE("gauss-legendre on the unit interval") {
  std::vector<double> x, w;
  gauss_legendre_01(12, x, w);
  double m0 = 0.0, m7 = 0.0;
  for (int i = 0; i < 12; ++i) {
    m0 += w[i];
    m7 += w[i] * std::pow(x[i], 7);
  }
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m7 == doctest::Approx(1.0 / 8.0).epsilon(1e-13));
}

TEST_CASE("key-value document round trip") {
  KeyValueDoc doc;
  doc.set("", "command", "solve-radial");
  doc.set("params", "dim", "3");
  doc.set_real("params", "s", 5.0 / 3.0);
  doc.set_real("result", "a_star", 2.5980762113533161);
  std::ostringstream os;
  write_doc(os, doc);

  std::istringstream is(os.str());
  const KeyValueDoc back = parse_doc(is);
  REQUIRE(back.entries.size() == doc.entries.size());
  for (size_t i = 0; i < doc.entries.size(); ++i) {
    CHECK(back.entries[i].section == doc.entries[i].section);
    CHECK(back.entries[i].key == doc.entries[i].key);
    CHECK(back.entries[i].value == doc.entries[i].value);
  }
  std::ostringstream os2;
  write_doc(os2, back);
  CHECK(os2.str() == os.str());
  CHECK(back.get("params", "dim") == "3");
  CHECK(back.get("params", "missing", "fallback") == "fallback");
}

TEST_CASE("17 significant digit formatting survives a parse") {
  for (double x : {1.0 / 3.0, 2.5980762113533161, 1e-17, -4.8965105626717717e-13}) {
    const double back = std::stod(format_real(x));
    CHECK(back == x);
  }
}

TEST_CASE("csv table layout") {
  CsvTable t;
  t.header = {"N", "D"};
  t.add_row({18.0, 0.5});
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str() == "N,D\n18,0.5\n");
}
