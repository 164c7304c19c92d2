#include <doctest.h>

#include <cmath>

#include "eigcount/closedform.hpp"
#include "eigcount/errors.hpp"
#include "eigcount/rng.hpp"
#include "eigcount/series.hpp"

using namespace eigcount;

namespace {

void check_coeffs(const TruncatedSeries& s, std::initializer_list<double> expected) {
  std::size_t i = 0;
  for (double e : expected) {
    CAPTURE(i);
    CHECK(s[i] == doctest::Approx(e).epsilon(1e-14));
    ++i;
  }
  for (; i <= s.order(); ++i) CHECK(std::abs(s[i]) < 1e-14);
}

}  // namespace

TEST_CASE("multiplication") {
  const TruncatedSeries one_plus(6, {1, 1}), one_minus(6, {1, -1}), unit(6, {1});
  check_coeffs(series_mul(one_plus, one_minus), {1, 0, -1});
  check_coeffs(series_mul(one_plus, one_plus), {1, 2, 1});
  const TruncatedSeries a(6, {0.5, -2, 3, 7});
  check_coeffs(series_mul(a, unit), {0.5, -2, 3, 7});
  CHECK(series_mul(TruncatedSeries(3), TruncatedSeries(5)).order() == 3);
}

TEST_CASE("division") {
  const TruncatedSeries one(5, {1}), one_minus(5, {1, -1});
  check_coeffs(series_div(one, one_minus), {1, 1, 1, 1, 1, 1});
  const TruncatedSeries a(5, {2, 1, -3});
  check_coeffs(series_div(a, a), {1});
  check_coeffs(series_div(TruncatedSeries(5, {1, 0, -1}), one_minus), {1, 1});
  CHECK_THROWS_AS(series_div(one, TruncatedSeries(5, {0, 1})), DomainError);
}

TEST_CASE("square root") {
  check_coeffs(series_sqrt(TruncatedSeries(4, {9})), {3});
  check_coeffs(series_sqrt(TruncatedSeries(7, {1, 2, 1})), {1, 1});
  check_coeffs(series_sqrt(TruncatedSeries(7, {4, -4, 1})), {2, -1});
  CHECK_THROWS_AS(series_sqrt(TruncatedSeries(3, {0, 1})), DomainError);
  CHECK_THROWS_AS(series_sqrt(TruncatedSeries(3, {-1})), DomainError);
}

TEST_CASE("random round trips") {
  GaussianStream g(3, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t order = 1 + trial % 30;
    TruncatedSeries a(order), b(order);
    a[0] = 2.0 + g.uniform();
    b[0] = 2.0 + g.uniform();
    for (std::size_t i = 1; i <= order; ++i) {
      a[i] = 0.25 * g() / double(i * i);
      b[i] = 0.25 * g() / double(i * i);
    }
    const auto s = series_sqrt(a);
    const auto sq = series_mul(s, s);
    const auto back = series_div(series_mul(a, b), b);
    for (std::size_t i = 0; i <= order; ++i) {
      CHECK(std::abs(sq[i] - a[i]) < 1e-12);
      CHECK(std::abs(back[i] - a[i]) < 1e-12);
    }
  }
}

TEST_CASE("generating function coefficients") {
  for (int d : {1, 2, 9, 100}) {
    const auto c = generating_coefficients(d, 3);
    REQUIRE(c.size() == 4);
    CHECK(c[0] == 0.0);
    CHECK(c[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  const auto c3 = generating_coefficients(3, 3);
  CHECK(std::abs(c3[2] - 2.0) < 1e-13);
  CHECK(std::abs(c3[3] - 3.5980762113533159403) < 1e-12);
  CHECK_THROWS_AS(generating_coefficients(0, 3), DomainError);
  CHECK_THROWS_AS(generating_coefficients(2, 0), DomainError);
}

TEST_CASE("generating function matches the finite sums") {
  double worst = 0.0;
  for (int d = 1; d <= 8; ++d) {
    const auto c = generating_coefficients(d, 20);
    for (int n = 1; n <= 20; ++n) {
      const double e = expected_count_sum({n, d}).value;
      worst = std::max(worst, std::abs(c[n] - e) / e);
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("generating function in extended precision for large d") {
  const auto c = generating_coefficients(60, 40);
  for (int n : {2, 10, 25, 40}) {
    const double e = expected_count_sum({n, 60}).value;
    CAPTURE(n);
    CHECK(std::abs(c[n] - e) / e < 1e-9);
  }
}
