#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "eigcount/closedform.hpp"
#include "eigcount/density.hpp"
#include "eigcount/errors.hpp"

using namespace eigcount;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); }
}  // namespace

TEST_CASE("gauss-hermite rule") {
  const auto rule = gauss_hermite_rule(40);
  REQUIRE(rule.nodes.size() == 40);
  double mass = 0.0, second = 0.0, fourth = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    mass += rule.weights[i];
    second += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    fourth += rule.weights[i] * std::pow(rule.nodes[i], 4);
  }
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  CHECK(rel(mass, sqrt_pi) < 1e-13);
  CHECK(rel(second, sqrt_pi / 2) < 1e-13);
  CHECK(rel(fourth, 3 * sqrt_pi / 4) < 1e-13);
  CHECK_THROWS_AS(gauss_hermite_rule(1), DomainError);
}

TEST_CASE("lambda density") {
  CHECK(f_density(0, 5, 2.3) == 1.0);
  for (int d : {1, 2, 7}) CHECK(rel(f_density(1, d, 0.0), std::sqrt(double(d))) < 1e-15);
  CHECK(rel(f_density(2, 1, 1.0), 1.60653065971263342360) < 1e-13);
  CHECK(rel(f_density(2, 1, 1.0), 1 + std::exp(-0.5)) < 1e-13);
  for (double lam : {0.3, 1.7, 4.0}) CHECK(f_density(5, 3, lam) == f_density(5, 3, -lam));
  CHECK_THROWS_AS(f_density(-1, 2, 0.0), DomainError);
}

TEST_CASE("lambda density matches the determinant moment") {
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    for (int d = 1; d <= 6; ++d) {
      for (double lam : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        const double via_det = std::pow(std::sqrt(double(d)), n) * std::sqrt(std::numbers::pi) /
                               (std::pow(std::sqrt(2.0), n) * std::tgamma((n + 1) / 2.0)) *
                               expected_abs_det(n, lam / std::sqrt(double(d)));
        worst = std::max(worst, rel(f_density(n, d, lam), via_det));
      }
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("determinant moment closed form") {
  CHECK(rel(expected_abs_det(1, 0), std::sqrt(2 / std::numbers::pi)) < 1e-14);
  CHECK(rel(expected_abs_det(2, 0), 1.0) < 1e-14);
  CHECK(rel(expected_abs_det(3, 1), 2.6184552882902326956) < 1e-12);
  CHECK(rel(expected_abs_det(2, 5), 25.000003726653172079) < 1e-12);
  CHECK(rel(expected_abs_det(4, 2), 19.112711514442091914) < 1e-12);
  CHECK(expected_abs_det(3, -1.5) == expected_abs_det(3, 1.5));
}

TEST_CASE("determinant moment by Monte Carlo") {
  for (auto [n, t] : {std::pair{1, 0.0}, {2, 0.0}, {3, 1.0}, {2, 5.0}}) {
    const auto e = mc_abs_det(n, t, 200000, 17, 0);
    CAPTURE(n);
    CAPTURE(t);
    CHECK(std::abs(e.mean - expected_abs_det(n, t)) < 3.5 * e.std_error);
    CHECK(e.samples == 200000);
  }
  CHECK_THROWS_AS(mc_abs_det(2, 0, 50, 1), DomainError);
}

TEST_CASE("Monte Carlo is independent of the thread count") {
  const auto a = mc_abs_det(3, 0.5, 20000, 9, 1);
  const auto b = mc_abs_det(3, 0.5, 20000, 9, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("eigenvalue density") {
  CHECK(rel(j_density(2, 3, 0.0), std::sqrt(3.0) / std::numbers::pi * phi(0)) < 1e-14);
  CHECK(rel(j_density(2, 3, 0.0), 0.219948406790772716833) < 1e-13);
  const double expected = std::tgamma(1.5) / std::pow(std::sqrt(std::numbers::pi), 3) *
                          f_density(2, 2, 1.0) * phi(1.0);
  CHECK(rel(j_density(3, 2, 1.0), expected) < 1e-13);
  CHECK(j_density(4, 2, 0.8) == j_density(4, 2, -0.8));
  CHECK_THROWS_AS(j_density(1, 2, 0.0), DomainError);
}

TEST_CASE("integrated eigenvalue density gives the expectation") {
  boost::math::quadrature::tanh_sinh<double> quad;
  for (auto [n, d] : {std::pair{2, 2}, {3, 3}, {5, 2}, {7, 4}}) {
    const double integral = quad.integrate([&](double l) { return j_density(n, d, l); },
                                           -40.0, 40.0);
    const double scaled = std::pow(std::sqrt(std::numbers::pi), n) / std::tgamma(n / 2.0) * integral;
    CAPTURE(n);
    CAPTURE(d);
    CHECK(rel(scaled, expected_count_quadrature({n, d}).value) < 1e-8);
  }
}

TEST_CASE("quadrature route") {
  CHECK(expected_count_quadrature({1, 4}).value == 1.0);
  CHECK(rel(expected_count_quadrature({2, 2}).value, std::numbers::sqrt3) < 1e-12);
  QuadratureDiagnostics diag;
  const auto v = expected_count_quadrature({3, 3}, {}, &diag);
  CHECK(rel(v.value, 3.5980762113533159403) < 1e-12);
  CHECK(diag.converged);
  CHECK(diag.doubling_change < 1e-10);

  QuadratureConfig simpson{200, QuadratureScheme::adaptive_simpson};
  CHECK(rel(expected_count_quadrature({3, 3}, simpson).value, 3.5980762113533159403) < 1e-9);
  CHECK_THROWS_AS(expected_count_quadrature({3, 3}, {1, QuadratureScheme::gauss_hermite}),
                  DomainError);
}

TEST_CASE("quadrature against the closed forms") {
  double worst = 0.0;
  for (int n = 2; n <= 12; ++n) {
    for (int d = 1; d <= 8; ++d) {
      worst = std::max(worst, rel(expected_count_quadrature({n, d}).value,
                                  expected_count_sum({n, d}).value));
    }
  }
  CHECK(worst < 1e-8);
}
