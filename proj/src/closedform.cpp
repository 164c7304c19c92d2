#include "eigcount/closedform.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "eigcount/errors.hpp"
#include "eigcount/specfun.hpp"

namespace eigcount {
namespace {

using boost::multiprecision::cpp_int;
using specfun::log_gamma;

// Relative error budget the finite-sum route promises.
constexpr double kSumRelativeBudget = 1e-10;

// log( Gamma(n - 1/2) / (sqrt(pi) Gamma(n - 1)) )
double log_sum_prefactor(int n) {
  return log_gamma(n - 0.5) - 0.5 * std::log(std::numbers::pi) - log_gamma(n - 1.0);
}

}  // namespace

ProblemShape::ProblemShape(int n, int d) : n_(n), d_(d) {
  if (n < 1) throw DomainError("ProblemShape: n must be >= 1, got " + std::to_string(n));
  if (d < 1) throw DomainError("ProblemShape: d must be >= 1, got " + std::to_string(d));
}

std::string_view to_string(Route route) {
  switch (route) {
    case Route::hypergeom: return "hypergeom";
    case Route::finite_sum: return "sum";
    case Route::quadrature: return "quadrature";
    case Route::generating_function: return "genfun";
  }
  return "unknown";
}

Route route_from_string(std::string_view name) {
  if (name == "hypergeom") return Route::hypergeom;
  if (name == "sum" || name == "finite_sum") return Route::finite_sum;
  if (name == "quadrature") return Route::quadrature;
  if (name == "genfun" || name == "generating_function") return Route::generating_function;
  throw DomainError("unknown route: " + std::string(name));
}

cpp_int dnd_exact(const ProblemShape& shape) {
  cpp_int total = 0;
  cpp_int power = 1;
  for (int i = 0; i < shape.n(); ++i) {
    total += power;
    power *= shape.d();
  }
  return total;
}

std::uint64_t dnd(const ProblemShape& shape) {
  const cpp_int exact = dnd_exact(shape);
  if (exact > cpp_int(std::numeric_limits<std::uint64_t>::max())) {
    throw OverflowError("D(n,d) exceeds 64 bits for n = " + std::to_string(shape.n()) +
                        ", d = " + std::to_string(shape.d()));
  }
  return exact.convert_to<std::uint64_t>();
}

double dnd_real(const ProblemShape& shape) { return dnd_exact(shape).convert_to<double>(); }

ExpectationValue expected_count_hypergeom(const ProblemShape& shape) {
  const int n = shape.n();
  if (n == 1) return {1.0, Route::hypergeom, shape};
  const double d = shape.d();

  // 2^(n-1) sqrt(d)^n Gamma(n-1/2) / (sqrt(pi) (d+1)^(n-1/2) Gamma(n))
  const double log_pre = (n - 1) * std::log(2.0) + 0.5 * n * std::log(d) + log_gamma(n - 0.5) -
                         0.5 * std::log(std::numbers::pi) - (n - 0.5) * std::log1p(d) -
                         log_gamma(n);
  const double f1 = specfun::gauss_2f1_unit(n - 0.5, 1.5, (d - 1.0) / (d + 1.0));
  const double f2 = specfun::gauss_2f1_unit(n - 0.5, 0.5 * (n + 1), 1.0 / (d + 1.0));
  return {std::exp(log_pre) * (2.0 * (n - 1) * f1 + f2), Route::hypergeom, shape};
}

ExpectationValue expected_count_sum(const ProblemShape& shape) {
  const int n = shape.n();
  if (n == 1) return {1.0, Route::finite_sum, shape};
  const double d = shape.d();
  const int k = n / 2;

  // sqrt(d)^n / sqrt(d+1) * sum_{j<=n-2} C(n-2,j) (-(d-1)/(d+1))^j / (j+1/2)
  const auto first = specfun::binomial_sum(0.5, n - 1, (d - 1.0) / (d + 1.0));
  const double first_scale = std::exp(0.5 * n * std::log(d) - 0.5 * std::log1p(d));

  // 2^(n-2) times the parity-dependent sum; both sums are incomplete beta
  // values at x = 1/(d+1).
  const double x = 1.0 / (d + 1.0);
  const auto second = (n % 2 == 0) ? specfun::beta_binomial_sum(k - 0.5, k, x)
                                   : specfun::beta_half_binomial_sum(k - 1, k, x);
  const double second_scale = std::ldexp(1.0, n - 2);

  const double bracket = first_scale * first.value + second_scale * second.value;
  const double bracket_err =
      first_scale * first.abs_error_bound + second_scale * second.abs_error_bound;
  if (!(bracket > 0.0) || bracket_err > kSumRelativeBudget * bracket) {
    throw PrecisionError("finite-sum route lost precision at n = " + std::to_string(n) +
                         ", d = " + std::to_string(shape.d()));
  }
  return {std::exp(log_sum_prefactor(n)) * bracket, Route::finite_sum, shape};
}

double normalized_ratio(const ProblemShape& shape) {
  return expected_count_sum(shape).value / std::sqrt(dnd_real(shape));
}

std::uint64_t z_count_from_class_count(std::uint64_t classes, int d, bool zero_is_eigenvalue) {
  if (d < 1) throw DomainError("z_count_from_class_count: d must be positive");
  if (d % 2 == 1) return classes;
  if (!zero_is_eigenvalue) return 2 * classes;
  if (classes == 0) {
    throw DomainError("z_count_from_class_count: a zero eigenvalue implies at least one class");
  }
  return 2 * classes - 1;
}

}  // namespace eigcount
