#include "eigcount/specfun.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "eigcount/errors.hpp"

namespace eigcount::specfun {
namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 200000;

// Cancellation tolerated before the finite sums hand over to the continued
// fraction: 1e6 at double precision, scaled by the epsilon ratio in quad.
constexpr double kMaxCancellationDouble = 1e6;
// Relative error estimate a finite sum must meet at its working precision.
constexpr double kSumTarget = 1e-13;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

// Series for P(a,x) without the prefactor x^a e^-x / Gamma(a+1).
SpecialValue gamma_series(double a, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < kMaxIterations; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) return {sum, std::abs(term)};
  }
  throw ConvergenceError("incomplete gamma series did not converge");
}

// Continued fraction for Q(a,x) without the prefactor x^a e^-x / Gamma(a).
SpecialValue gamma_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return {h, std::abs(h) * std::abs(del - 1.0)};
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

void check_gamma_args(double a, double x) {
  require(a > 0.0 && std::isfinite(a), "incomplete gamma: a must be positive");
  require(x >= 0.0 && !std::isnan(x), "incomplete gamma: x must be nonnegative");
}

// Lentz continued fraction of B(p,q,x) * p / (x^p (1-x)^q).
double beta_continued_fraction(double p, double q, double x, double* rel_err) {
  const double qab = p + q;
  const double qap = p + 1.0;
  const double qam = p - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (q - m) * x / ((qam + m2) * (p + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(p + m) * (qab + m) * x / ((p + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) {
      *rel_err = std::abs(del - 1.0) + m * kEps;
      return h;
    }
  }
  throw ConvergenceError("incomplete beta continued fraction did not converge");
}

// B(p,q,x) with 0 < x < 1 on the convergent side of the fraction.
SpecialValue beta_lower_side(double p, double q, double x) {
  double rel = 0.0;
  const double cf = beta_continued_fraction(p, q, x, &rel);
  const double v = std::exp(p * std::log(x) + q * std::log1p(-x)) * cf / p;
  return {v, std::abs(v) * rel};
}

template <class T>
struct Accumulated {
  T sum{0};
  T abs_sum{0};
};

// sum_{j<m} C(m-1,j) (-x)^j / (j+nu)
template <class T>
Accumulated<T> accumulate_binomial(double nu, int m, double x) {
  Accumulated<T> acc;
  T binom{1};
  T power{1};
  const T tx{x};
  for (int j = 0; j < m; ++j) {
    const T term = binom * power / (T(j) + T(nu));
    if (j % 2 == 0) {
      acc.sum += term;
    } else {
      acc.sum -= term;
    }
    acc.abs_sum += term;
    binom = binom * T(m - 1 - j) / T(j + 1);
    power *= tx;
  }
  return acc;
}

// sum_{j<=k} (-1)^j C(k,j) (1 - (1-x)^(j+m+1/2)) / (j+m+1/2)
template <class T>
Accumulated<T> accumulate_half_binomial(int k, int m, double x) {
  using std::expm1;
  using std::log1p;
  using boost::multiprecision::expm1;
  using boost::multiprecision::log1p;
  Accumulated<T> acc;
  T binom{1};
  const T log_one_minus_x = log1p(-T(x));
  for (int j = 0; j <= k; ++j) {
    const T e = T(j) + T(m) + T(0.5);
    const T term = binom * (-expm1(e * log_one_minus_x)) / e;
    if (j % 2 == 0) {
      acc.sum += term;
    } else {
      acc.sum -= term;
    }
    acc.abs_sum += term;
    binom = binom * T(k - j) / T(j + 1);
  }
  return acc;
}

// Evaluates a finite alternating sum, in double precision when it has at
// most 30 terms and the error estimate meets kSumTarget, else in quad
// precision. Returns false when the cancellation is beyond what quad
// precision resolves; the caller then uses its continued-fraction route.
template <class Accumulate>
bool finite_sum(int terms, Accumulate&& accumulate, SpecialValue* out) {
  auto accept = [&](double sum, double abs_sum, double eps) {
    const double max_cancellation = kMaxCancellationDouble * (kEps / eps);
    const double bound = eps * (terms + 1) * abs_sum;
    if (sum == 0.0 || abs_sum > max_cancellation * std::abs(sum) ||
        bound > kSumTarget * std::abs(sum)) {
      return false;
    }
    out->value = sum;
    out->abs_error_bound = bound + 0.5 * kEps * std::abs(sum);
    return true;
  };
  if (terms <= 30) {
    const auto acc = accumulate(double{});
    if (accept(acc.sum, acc.abs_sum, kEps)) return true;
  }
  const auto acc = accumulate(Quad{});
  return accept(static_cast<double>(acc.sum), static_cast<double>(acc.abs_sum),
                static_cast<double>(std::numeric_limits<Quad>::epsilon()));
}

bool matches_three_halves_family(double b, double c, int* n) {
  if (c != 1.5 || !is_integer(b - 0.5) || b < 1.5) return false;
  *n = static_cast<int>(b + 0.5);
  return true;
}

bool matches_half_n_family(double b, double c, int* n) {
  if (!is_integer(b - 0.5) || b < 1.5) return false;
  const int cand = static_cast<int>(b + 0.5);
  if (c != 0.5 * (cand + 1)) return false;
  *n = cand;
  return true;
}

}  // namespace

double log_gamma(double x) {
  require(x > 0.0, "log_gamma: argument must be positive");
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double log_beta(double p, double q) { return log_gamma(p) + log_gamma(q) - log_gamma(p + q); }

SpecialValue regularized_gamma_p_e(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return {0.0, 0.0};
  if (std::isinf(x)) return {1.0, 0.0};
  if (x < a + 1.0) {
    const auto s = gamma_series(a, x);
    const double pre = std::exp(a * std::log(x) - x - log_gamma(a + 1.0));
    return {pre * s.value, pre * s.abs_error_bound + kEps * pre * s.value};
  }
  const auto q = regularized_gamma_q_e(a, x);
  return {1.0 - q.value, q.abs_error_bound + kEps};
}

SpecialValue regularized_gamma_q_e(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return {1.0, 0.0};
  if (std::isinf(x)) return {0.0, 0.0};
  if (x < a + 1.0) {
    const auto p = regularized_gamma_p_e(a, x);
    return {1.0 - p.value, p.abs_error_bound + kEps};
  }
  const auto cf = gamma_continued_fraction(a, x);
  const double pre = std::exp(a * std::log(x) - x - log_gamma(a));
  return {pre * cf.value, pre * cf.abs_error_bound};
}

double regularized_gamma_p(double a, double x) { return regularized_gamma_p_e(a, x).value; }
double regularized_gamma_q(double a, double x) { return regularized_gamma_q_e(a, x).value; }

double log_regularized_gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return std::log1p(-regularized_gamma_p(a, x));
  const auto cf = gamma_continued_fraction(a, x);
  return a * std::log(x) - x - log_gamma(a) + std::log(cf.value);
}

SpecialValue upper_incomplete_gamma_e(double a, double x) {
  check_gamma_args(a, x);
  SpecialValue out;
  if (x >= a + 1.0) {
    const auto cf = gamma_continued_fraction(a, x);
    const double pre = std::exp(a * std::log(x) - x);
    out = {pre * cf.value, pre * cf.abs_error_bound};
  } else {
    const double full = std::tgamma(a);
    const auto lower = lower_incomplete_gamma_e(a, x);
    out = {full - lower.value, lower.abs_error_bound + kEps * full};
  }
  if (!std::isfinite(out.value)) {
    throw OverflowError("upper incomplete gamma overflows for a = " + std::to_string(a));
  }
  return out;
}

double upper_incomplete_gamma(double a, double x) { return upper_incomplete_gamma_e(a, x).value; }

SpecialValue lower_incomplete_gamma_e(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return {0.0, 0.0};
  SpecialValue out;
  if (x < a + 1.0) {
    const auto s = gamma_series(a, x);
    // sum_k x^k / (a (a+1) ... (a+k)) = series / a
    const double pre = std::exp(a * std::log(x) - x) / a;
    out = {pre * s.value, pre * s.abs_error_bound + kEps * pre * s.value};
  } else {
    const double full = std::tgamma(a);
    const auto upper = upper_incomplete_gamma_e(a, x);
    out = {full - upper.value, upper.abs_error_bound + kEps * full};
  }
  if (!std::isfinite(out.value)) {
    throw OverflowError("lower incomplete gamma overflows for a = " + std::to_string(a));
  }
  return out;
}

double lower_incomplete_gamma(double a, double x) { return lower_incomplete_gamma_e(a, x).value; }

SpecialValue incomplete_beta_e(double p, double q, double x) {
  require(p > 0.0 && q > 0.0, "incomplete beta: p and q must be positive");
  require(x >= 0.0 && x <= 1.0, "incomplete beta: x must lie in [0, 1]");
  if (x == 0.0) return {0.0, 0.0};
  const double complete = std::exp(log_beta(p, q));
  if (x == 1.0) return {complete, 4.0 * kEps * complete};
  if (x < (p + 1.0) / (p + q + 2.0)) return beta_lower_side(p, q, x);
  const auto tail = beta_lower_side(q, p, 1.0 - x);
  const double v = complete - tail.value;
  return {v, tail.abs_error_bound + 4.0 * kEps * complete};
}

double incomplete_beta(double p, double q, double x) { return incomplete_beta_e(p, q, x).value; }

SpecialValue binomial_sum(double nu, int m, double x) {
  require(m >= 1, "binomial_sum: m must be a positive integer");
  require(nu > 0.0, "binomial_sum: nu must be positive");
  require(x >= 0.0 && x <= 1.0, "binomial_sum: x must lie in [0, 1]");
  SpecialValue out;
  if (finite_sum(m, [&](auto tag) { return accumulate_binomial<decltype(tag)>(nu, m, x); }, &out)) {
    return out;
  }
  const auto b = incomplete_beta_e(nu, m, x);
  const double scale = std::pow(x, -nu);
  return {b.value * scale, b.abs_error_bound * scale};
}

SpecialValue beta_binomial_sum(double nu, int m, double x) {
  const auto s = binomial_sum(nu, m, x);
  const double scale = std::pow(x, nu);
  return {s.value * scale, s.abs_error_bound * scale};
}

SpecialValue beta_half_binomial_sum(int k, int m, double x) {
  require(k >= 0 && m >= 0, "beta_half_binomial_sum: k and m must be nonnegative");
  require(x >= 0.0 && x <= 1.0, "beta_half_binomial_sum: x must lie in [0, 1]");
  if (x == 0.0) return {0.0, 0.0};
  SpecialValue out;
  if (finite_sum(k + 1, [&](auto tag) { return accumulate_half_binomial<decltype(tag)>(k, m, x); },
                 &out)) {
    return out;
  }
  return incomplete_beta_e(k + 1.0, m + 0.5, x);
}

SpecialValue hyp2f1_three_halves(int n, double x) {
  require(n >= 2, "hyp2f1_three_halves: n must be >= 2");
  require(x >= 0.0 && x < 1.0, "hyp2f1_three_halves: x must lie in [0, 1)");
  const auto s = binomial_sum(0.5, n - 1, x);
  const double scale = 0.5 * std::exp(-(n - 1) * std::log1p(-x));
  return {s.value * scale, s.abs_error_bound * scale};
}

SpecialValue hyp2f1_half_n(int n, double x) {
  require(n >= 2, "hyp2f1_half_n: n must be >= 2");
  require(x >= 0.0 && x < 1.0, "hyp2f1_half_n: x must lie in [0, 1)");
  if (x == 0.0) return {1.0, 0.0};
  const int k = n / 2;
  if (n % 2 == 0) {
    const auto s = binomial_sum(k - 0.5, k, x);
    const double scale = 0.5 * (n - 1) * std::exp(-k * std::log1p(-x));
    return {s.value * scale, s.abs_error_bound * scale};
  }
  const auto s = beta_half_binomial_sum(k - 1, k, x);
  const double scale =
      0.5 * (n - 1) * std::exp(-(k + 0.5) * std::log1p(-x) - k * std::log(x));
  return {s.value * scale, s.abs_error_bound * scale};
}

SpecialValue gauss_2f1_unit_e(double b, double c, double x) {
  require(x >= 0.0 && x < 1.0, "gauss_2f1_unit: x must lie in [0, 1)");
  require(!(c <= 0.0 && is_integer(c)), "gauss_2f1_unit: c must not be a nonpositive integer");
  if (x == 0.0) return {1.0, 0.0};
  int n = 0;
  if (matches_three_halves_family(b, c, &n)) return hyp2f1_three_halves(n, x);
  if (matches_half_n_family(b, c, &n)) return hyp2f1_half_n(n, x);

  if (c > 1.0 && b - c + 1.0 > 0.0 && x > 0.5) {
    const auto beta = incomplete_beta_e(c - 1.0, b - c + 1.0, x);
    const double scale =
        (c - 1.0) * std::exp((c - b - 1.0) * std::log1p(-x) + (1.0 - c) * std::log(x));
    return {beta.value * scale, beta.abs_error_bound * scale};
  }

  // (1)_k / k! = 1, so the terms are (b)_k / (c)_k x^k.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < kMaxIterations; ++k) {
    term *= (b + k) / (c + k) * x;
    sum += term;
    if (term == 0.0) return {sum, 0.0};
    const bool decreasing = std::abs((b + k + 1) / (c + k + 1) * x) < 1.0;
    if (decreasing && std::abs(term) < kEps * std::abs(sum)) {
      return {sum, std::abs(term) / (1.0 - x)};
    }
  }
  throw ConvergenceError("gauss_2f1_unit: series did not converge");
}

double gauss_2f1_unit(double b, double c, double x) { return gauss_2f1_unit_e(b, c, x).value; }

double erf(double x) { return std::erf(x); }
double erfc(double x) { return std::erfc(x); }

}  // namespace eigcount::specfun
