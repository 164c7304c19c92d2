#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eigcount/closedform.hpp"
#include "eigcount/density.hpp"
#include "eigcount/errors.hpp"

using namespace eigcount;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("problem shape validation") {
  CHECK_THROWS_AS(ProblemShape(0, 1), DomainError);
  CHECK_THROWS_AS(ProblemShape(2, 0), DomainError);
  CHECK(ProblemShape(3, 2) == ProblemShape(3, 2));
}

TEST_CASE("complex class count") {
  CHECK(dnd({3, 3}) == 13);
  CHECK(dnd({7, 1}) == 7);
  CHECK(dnd({2, 5}) == 6);
  CHECK(dnd({1, 9}) == 1);
  CHECK_THROWS_AS(dnd({80, 3}), OverflowError);
  CHECK(dnd_exact({80, 3}) == (boost::multiprecision::pow(boost::multiprecision::cpp_int(3), 80) - 1) / 2);
  CHECK(dnd_real({40, 2}) == std::ldexp(1.0, 40) - 1);
}

TEST_CASE("route names round trip") {
  for (Route r : {Route::hypergeom, Route::finite_sum, Route::quadrature, Route::generating_function}) {
    CHECK(route_from_string(to_string(r)) == r);
  }
  CHECK_THROWS_AS(route_from_string("simpson"), DomainError);
}

TEST_CASE("one-dimensional case is exactly one") {
  for (int d = 1; d <= 20; ++d) {
    CHECK(expected_count_hypergeom({1, d}).value == 1.0);
    CHECK(expected_count_sum({1, d}).value == 1.0);
  }
}

TEST_CASE("two-dimensional values") {
  CHECK(std::abs(expected_count_sum({2, 1}).value - std::numbers::sqrt2) < 1e-10);
  CHECK(std::abs(expected_count_sum({2, 2}).value - std::numbers::sqrt3) < 1e-10);
  CHECK(std::abs(expected_count_sum({2, 3}).value - 2.0) < 1e-10);
  CHECK(std::abs(expected_count_hypergeom({2, 2}).value - std::numbers::sqrt3) < 1e-10);
}

TEST_CASE("values against the high-precision oracle") {
  struct Case {
    int n, d;
    double value;
  };
  const Case cases[] = {{3, 3, 3.5980762113533159403}, {3, 2, 2.6329931618554520655},
                        {4, 2, 3.8490017945975050967}, {5, 3, 10.986355437389308145},
                        {12, 8, 99081.118783586929326}, {50, 50, 4.257474626813616071e+41},
                        {30, 7, 1938183870306.265949845759}, {49, 2, 23726566.40510147431969317}};
  for (const auto& c : cases) {
    CAPTURE(c.n);
    CAPTURE(c.d);
    CHECK(rel(expected_count_sum({c.n, c.d}).value, c.value) < 1e-9);
    CHECK(rel(expected_count_hypergeom({c.n, c.d}).value, c.value) < 1e-9);
  }
}

TEST_CASE("hypergeometric and finite-sum routes agree up to n, d = 50") {
  double worst = 0.0;
  for (int n = 2; n <= 50; ++n) {
    for (int d = 1; d <= 50; ++d) {
      worst = std::max(worst, rel(expected_count_hypergeom({n, d}).value,
                                  expected_count_sum({n, d}).value));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("expectation is bounded by the complex count") {
  for (int n = 1; n <= 12; ++n) {
    for (int d = 1; d <= 8; ++d) {
      const double e = expected_count_sum({n, d}).value;
      CHECK(e >= 1.0);
      CHECK(e <= dnd_real({n, d}));
    }
  }
}

TEST_CASE("normalized ratio") {
  CHECK(std::abs(normalized_ratio({2, 3}) - 1.0) < 1e-12);
  CHECK(std::abs(normalized_ratio({40, 1}) - std::sqrt(2 / std::numbers::pi)) < 0.08);
  CHECK(std::abs(normalized_ratio({40, 2}) - 1.0) < 0.05);
  CHECK(rel(normalized_ratio({10, 1}), 0.92591284056102436751) < 1e-10);
  CHECK(rel(normalized_ratio({40, 1}), 0.86944998008663554792) < 1e-10);
  CHECK(rel(normalized_ratio({10, 2}), 0.99890004514753643403) < 1e-10);
  CHECK(rel(normalized_ratio({3, 100}), 0.99999987808393964364) < 1e-10);
  CHECK(rel(normalized_ratio({200, 1}), 0.83174340143749133071) < 1e-9);
  CHECK(std::abs(normalized_ratio({200, 2}) - 1.0) < 1e-9);
}

TEST_CASE("normalized ratio trends toward the limits") {
  const double root = std::sqrt(2 / std::numbers::pi);
  for (int d : {1, 2, 3, 5}) {
    const double limit = d == 1 ? root : 1.0;
    double prev = INFINITY;
    for (int n : {10, 20, 40}) {
      const double gap = std::abs(normalized_ratio({n, d}) - limit);
      CHECK(gap < prev);
      prev = gap;
    }
  }
  for (int n : {3, 4, 5}) {
    double prev = INFINITY;
    for (int d : {10, 100, 1000}) {
      const double gap = std::abs(normalized_ratio({n, d}) - 1.0);
      CHECK(gap < prev);
      prev = gap;
    }
  }
}

TEST_CASE("z-eigenvalue count") {
  CHECK(z_count_from_class_count(4, 3, false) == 4);
  CHECK(z_count_from_class_count(3, 2, false) == 6);
  CHECK(z_count_from_class_count(3, 2, true) == 5);
  CHECK_THROWS_AS(z_count_from_class_count(0, 2, true), DomainError);
  CHECK_THROWS_AS(z_count_from_class_count(1, 0, false), DomainError);
}
