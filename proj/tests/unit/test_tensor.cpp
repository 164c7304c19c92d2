#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "eigcount/errors.hpp"
#include "eigcount/stats.hpp"
#include "eigcount/tensor.hpp"

using namespace eigcount;

TEST_CASE("monomial enumeration") {
  const auto ex = monomial_exponents(2, 2);
  REQUIRE(ex.size() == 3);
  CHECK(ex[0] == std::vector<int>{2, 0});
  CHECK(ex[1] == std::vector<int>{1, 1});
  CHECK(ex[2] == std::vector<int>{0, 2});
  CHECK(monomial_exponents(3, 3).size() == 10);
  CHECK(monomial_exponents(4, 5).size() == 56);
  CHECK(multinomial(std::vector<int>{1, 1}) == 2.0);
  CHECK(multinomial(std::vector<int>{2, 1, 1}) == 12.0);
  CHECK_THROWS_AS(monomial_exponents(0, 2), DomainError);
}

TEST_CASE("tensor validation") {
  CHECK_THROWS_AS(GaussianTensor({2, 2}, std::vector<double>(7)), DomainError);
  std::vector<double> bad(8, 0.0);
  bad[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(GaussianTensor({2, 2}, bad), DomainError);
  const auto t = sample_gaussian_tensor({2, 2}, 4);
  CHECK(t.entries().size() == 8);
}

TEST_CASE("sampling is deterministic in the seed") {
  const auto a = sample_gaussian_tensor({3, 3}, 99, 5);
  const auto b = sample_gaussian_tensor({3, 3}, 99, 5);
  const auto c = sample_gaussian_tensor({3, 3}, 99, 6);
  CHECK(std::equal(a.entries().begin(), a.entries().end(), b.entries().begin()));
  CHECK(!std::equal(a.entries().begin(), a.entries().end(), c.entries().begin()));
}

TEST_CASE("contraction of a diagonal tensor") {
  const int n = 3, d = 3;
  std::vector<double> e(81, 0.0);
  for (int i = 0; i < n; ++i) e[i * 27 + i * 9 + i * 3 + i] = 1.0;
  const PolySystem f = contract(GaussianTensor({n, d}, e));
  for (int j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < f.monomial_count(); ++m) {
      const bool pure = f.exponents()[m][j] == d;
      CHECK(f.coeff(j, m) == (pure ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("contraction for d = 1 is a matrix product") {
  const auto t = sample_gaussian_tensor({3, 1}, 2);
  const PolySystem f = contract(t);
  const std::vector<double> v{0.3, -1.2, 2.0};
  std::vector<double> out(3);
  f.evaluate<double>(v, out);
  for (int j = 0; j < 3; ++j) {
    double expected = 0.0;
    for (int i = 0; i < 3; ++i) expected += t.entries()[j * 3 + i] * v[i];
    CHECK(out[j] == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("contraction sums symmetric index tuples") {
  const auto t = sample_gaussian_tensor({2, 2}, 3);
  const PolySystem f = contract(t);
  const std::size_t mixed = f.monomial_index(std::vector<int>{1, 1});
  for (int j = 0; j < 2; ++j) {
    const double a12 = t.entries()[j * 4 + 0 * 2 + 1];
    const double a21 = t.entries()[j * 4 + 1 * 2 + 0];
    CHECK(f.coeff(j, mixed) == doctest::Approx(a12 + a21).epsilon(1e-15));
  }
}

TEST_CASE("contracted system evaluates to A v^d") {
  const auto t = sample_gaussian_tensor({3, 2}, 8);
  const PolySystem f = contract(t);
  const std::vector<double> v{0.7, -0.4, 1.1};
  std::vector<double> out(3);
  f.evaluate<double>(v, out);
  for (int j = 0; j < 3; ++j) {
    double direct = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) direct += t.entries()[j * 9 + a * 3 + b] * v[a] * v[b];
    }
    CHECK(out[j] == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("jacobian matches finite differences") {
  const PolySystem f = sample_bw_system({3, 3}, 12);
  const std::vector<std::complex<double>> v{{0.5, 0.2}, {-1.0, 0.3}, {0.8, -0.6}};
  std::vector<std::complex<double>> value(3), jac(9), plus(3), minus(3);
  f.evaluate_with_jacobian<std::complex<double>>(v, value, jac);
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    auto vp = v, vm = v;
    vp[i] += h;
    vm[i] -= h;
    f.evaluate<std::complex<double>>(vp, plus);
    f.evaluate<std::complex<double>>(vm, minus);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs((plus[j] - minus[j]) / (2 * h) - jac[j * 3 + i]) < 1e-7);
    }
  }
}

TEST_CASE("bombieri-weyl sampling") {
  const ProblemShape shape(2, 3);
  Moments bw, mono;
  const std::size_t mixed = PolySystem(shape).monomial_index(std::vector<int>{2, 1});
  for (std::uint64_t s = 0; s < 20000; ++s) {
    const PolySystem f = sample_bw_system(shape, 6, s);
    bw.add(f.bw_coeff(0, mixed));
    mono.add(f.coeff(0, mixed));
  }
  const double se = std::sqrt(2.0 / 19999);
  CHECK(std::abs(bw.sample_variance() - 1.0) < 4 * se);
  CHECK(std::abs(mono.sample_variance() / 3.0 - 1.0) < 4 * se);

  const PolySystem lin = sample_bw_system({3, 1}, 1);
  for (std::size_t m = 0; m < lin.monomial_count(); ++m) CHECK(lin.bw_coeff(1, m) == lin.coeff(1, m));
}

TEST_CASE("coefficient variance test") {
  const auto r22 = bw_variance_test({2, 2}, 20000, 3);
  CHECK(r22.z_scores.size() == 6);
  CHECK(r22.passed);
  const auto r1 = bw_variance_test({1, 4}, 10000, 3);
  CHECK(r1.z_scores.size() == 1);
  CHECK(r1.passed);
  CHECK_THROWS_AS(bw_variance_test({2, 2}, 100, 3), DomainError);
}

TEST_CASE("variance test is independent of the thread count") {
  const auto a = bw_variance_test({2, 3}, 10000, 21, 1);
  const auto b = bw_variance_test({2, 3}, 10000, 21, 3);
  CHECK(a.z_scores == b.z_scores);
}
