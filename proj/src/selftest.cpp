#include "eigcount/selftest.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "eigcount/closedform.hpp"
#include "eigcount/density.hpp"
#include "eigcount/homotopy.hpp"
#include "eigcount/parallel.hpp"
#include "eigcount/rng.hpp"
#include "eigcount/series.hpp"
#include "eigcount/specfun.hpp"
#include "eigcount/sturm.hpp"

namespace eigcount {
namespace {

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

CheckResult check_unit_dimension() {
  CheckResult r{"unit dimension E_{1,d} = 1", true, ""};
  for (int d = 1; d <= 20; ++d) {
    const ProblemShape s(1, d);
    const double values[] = {expected_count_hypergeom(s).value, expected_count_sum(s).value,
                             expected_count_quadrature(s).value,
                             generating_coefficients(d, 1)[1]};
    for (double v : values) {
      if (v != 1.0) {
        r.passed = false;
        r.detail = fmt("d = %.0f gives %.17g", d, v);
        return r;
      }
    }
  }
  r.detail = "d = 1..20, four routes";
  return r;
}

CheckResult check_route_agreement(int nmax, int dmax) {
  CheckResult r{"four-route agreement", true, ""};
  double worst = 0.0;
  int wn = 0, wd = 0;
  for (int d = 1; d <= dmax; ++d) {
    const auto gf = generating_coefficients(d, nmax);
    for (int n = 2; n <= nmax; ++n) {
      const ProblemShape s(n, d);
      const double v[] = {expected_count_hypergeom(s).value, expected_count_sum(s).value,
                          expected_count_quadrature(s).value, gf[n]};
      for (double a : v) {
        for (double b : v) {
          const double dev = rel(a, b);
          if (dev > worst) {
            worst = dev;
            wn = n;
            wd = d;
          }
        }
      }
    }
  }
  r.passed = worst < 1e-8;
  r.detail = fmt("max relative deviation %.3g at n = %.0f", worst, wn) + fmt(", d = %.0f", wd);
  return r;
}

CheckResult check_closed_values() {
  CheckResult r{"closed values E_{2,1}, E_{2,2}, E_{2,3}", true, ""};
  const double expected[] = {std::numbers::sqrt2, std::numbers::sqrt3, 2.0};
  double worst = 0.0;
  for (int d = 1; d <= 3; ++d) {
    worst = std::max(worst, std::abs(expected_count_sum({2, d}).value - expected[d - 1]));
  }
  r.passed = worst < 1e-10;
  r.detail = fmt("max abs error %.3g", worst);
  return r;
}

CheckResult check_gamma_complement() {
  CheckResult r{"incomplete gamma complement", true, ""};
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.5, 7.0, 20.0, 60.5}) {
    for (double x : {0.01, 0.5, 1.0, 5.0, 30.0, 80.0}) {
      worst = std::max(worst, std::abs(specfun::regularized_gamma_p(a, x) +
                                       specfun::regularized_gamma_q(a, x) - 1.0));
      const double whole = std::exp(specfun::log_gamma(a));
      worst = std::max(worst, rel(specfun::lower_incomplete_gamma(a, x) +
                                      specfun::upper_incomplete_gamma(a, x),
                                  whole));
    }
  }
  r.passed = worst < 1e-13;
  r.detail = fmt("max deviation %.3g", worst);
  return r;
}

CheckResult check_integral_identities() {
  CheckResult r{"incomplete gamma integral identities", true, ""};
  boost::math::quadrature::tanh_sinh<double> quad;
  const double grid[] = {0.5, 1.0, 2.0, 3.0};
  double worst = 0.0;
  for (double alpha : grid) {
    for (double beta : grid) {
      for (double mu : grid) {
        for (double nu : grid) {
          const double scale = std::pow(alpha, nu) *
                               std::exp(specfun::log_gamma(mu + nu)) /
                               std::pow(alpha + beta, mu + nu);
          const double inf = std::numeric_limits<double>::infinity();
          const double upper = quad.integrate(
              [&](double x) {
                return std::pow(x, mu - 1) * std::exp(-beta * x) *
                       specfun::upper_incomplete_gamma(nu, alpha * x);
              },
              0.0, inf);
          const double lower = quad.integrate(
              [&](double x) {
                return std::pow(x, mu - 1) * std::exp(-beta * x) *
                       specfun::lower_incomplete_gamma(nu, alpha * x);
              },
              0.0, inf);
          const double upper_closed =
              scale / mu * specfun::gauss_2f1_unit(mu + nu, mu + 1, beta / (alpha + beta));
          const double lower_closed =
              scale / nu * specfun::gauss_2f1_unit(mu + nu, nu + 1, alpha / (alpha + beta));
          worst = std::max({worst, rel(upper, upper_closed), rel(lower, lower_closed)});
        }
      }
    }
  }
  r.passed = worst < 1e-8;
  r.detail = fmt("max relative deviation %.3g over 256 parameter sets", worst);
  return r;
}

CheckResult check_beta_identities() {
  CheckResult r{"hypergeometric / incomplete beta identities", true, ""};
  double worst = 0.0;
  const double xs[] = {0.05, 0.3, 0.5, 0.7, 0.95};
  for (double x : xs) {
    for (int m = 1; m <= 20; ++m) {
      for (double nu : {0.5, 1.0, 2.5, 7.0, 12.5}) {
        worst = std::max(worst, rel(specfun::beta_binomial_sum(nu, m, x).value,
                                    specfun::incomplete_beta(nu, m, x)));
      }
      for (int k = 0; k <= 20; k += 4) {
        worst = std::max(worst, rel(specfun::beta_half_binomial_sum(k, m, x).value,
                                    specfun::incomplete_beta(k + 1, m + 0.5, x)));
      }
    }
    for (int n = 2; n <= 20; ++n) {
      const double b = n - 0.5;
      for (double c : {1.5, (n + 1) / 2.0}) {
        if (!(b - c + 1 > 0.0) || !(c > 1.0)) continue;
        const double via_beta = (c - 1) * std::pow(1 - x, c - b - 1) * std::pow(x, 1 - c) *
                                specfun::incomplete_beta(c - 1, b - c + 1, x);
        worst = std::max(worst, rel(specfun::gauss_2f1_unit(b, c, x), via_beta));
      }
    }
  }
  r.passed = worst < 1e-10;
  r.detail = fmt("max relative deviation %.3g", worst);
  return r;
}

CheckResult check_series_roundtrip() {
  CheckResult r{"power series round trips", true, ""};
  double worst = 0.0;
  GaussianStream g(7, 0);
  for (int trial = 0; trial < 20; ++trial) {
    TruncatedSeries a(40), b(40);
    for (std::size_t i = 0; i <= 40; ++i) {
      a[i] = g() / double(i + 1);
      b[i] = g() / double(i + 1);
    }
    a[0] = 1.0 + std::abs(a[0]);
    b[0] = 1.0 + std::abs(b[0]);
    const auto s = series_sqrt(a);
    const auto sq = series_mul(s, s);
    const auto back = series_div(series_mul(a, b), b);
    for (std::size_t i = 0; i <= 40; ++i) {
      worst = std::max({worst, std::abs(sq[i] - a[i]), std::abs(back[i] - a[i])});
    }
  }
  r.passed = worst < 1e-9;
  r.detail = fmt("max coefficient error %.3g", worst);
  return r;
}

CheckResult check_sturm_companion(int polynomials, std::uint64_t seed) {
  CheckResult r{"Sturm count vs companion matrix", true, ""};
  int mismatches = 0;
  for (int p = 0; p < polynomials; ++p) {
    GaussianStream g(seed, p);
    std::vector<double> c(8);
    for (double& x : c) x = g();
    const int deg = 7;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(comp, false).eigenvalues();
    std::size_t real = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) real += std::abs(ev(i).imag()) < 1e-10;
    if (real != sturm_count(c)) ++mismatches;
  }
  r.passed = mismatches == 0;
  r.detail = fmt("%.0f mismatches over %.0f degree-7 polynomials", mismatches, polynomials);
  return r;
}

CheckResult check_homotopy_diagonal() {
  CheckResult r{"homotopy on f_i = X_i^2", true, ""};
  PolySystem f({3, 2});
  for (int i = 0; i < 3; ++i) {
    std::vector<int> alpha(3, 0);
    alpha[i] = 2;
    f.coeff(i, f.monomial_index(alpha)) = 1.0;
  }
  const auto res = count_classes_homotopy_retrying(f, 11, 0);
  r.passed = res.real_count == 7 && res.complex_count == 7 && res.complete;
  r.detail = fmt("real %.0f, complex %.0f", res.real_count, res.complex_count);
  return r;
}

CheckResult check_homotopy_completeness(int samples_per_shape, std::uint64_t seed,
                                        unsigned threads) {
  CheckResult r{"homotopy completeness at (3,2), (3,3)", true, ""};
  std::string detail;
  for (int d : {2, 3}) {
    const ProblemShape shape(3, d);
    std::atomic<int> complete{0};
    for_each_block(samples_per_shape, 4, threads,
                   [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
                     for (std::uint64_t s = begin; s < end; ++s) {
                       const PolySystem f = contract(sample_gaussian_tensor(shape, seed, s));
                       const auto res = count_classes_homotopy_retrying(f, seed, s, 1);
                       if (res.complete) ++complete;
                     }
                   });
    const double rate = double(complete.load()) / samples_per_shape;
    if (rate < 0.99) r.passed = false;
    detail += fmt("d = %.0f: %.4f complete; ", d, rate);
  }
  detail.resize(detail.size() - 2);
  r.detail = detail;
  return r;
}

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  std::vector<CheckResult> out;
  out.push_back(check_unit_dimension());
  out.push_back(check_route_agreement());
  out.push_back(check_closed_values());
  out.push_back(check_gamma_complement());
  out.push_back(check_integral_identities());
  out.push_back(check_beta_identities());
  out.push_back(check_series_roundtrip());
  out.push_back(check_sturm_companion(options.thorough ? 1000 : 200, options.seed));
  out.push_back(check_homotopy_diagonal());
  out.push_back(
      check_homotopy_completeness(options.thorough ? 200 : 40, options.seed, options.threads));
  return out;
}

}  // namespace eigcount
