#pragma once

// Incomplete gamma / beta functions, erf, and the a = 1 Gauss hypergeometric
// function, including the finite binomial-sum forms used by the closed-form
// expectation routes.

namespace eigcount::specfun {

/// A function value together with an estimated absolute truncation error.
/// The bound is advisory: last-term magnitude for series, tail bound for
/// continued fractions, rounding estimate for finite sums.
struct SpecialValue {
  double value = 0.0;
  double abs_error_bound = 0.0;
};

/// log Gamma(x) for x > 0 (reentrant).
double log_gamma(double x);

/// log B(p, q) = log Gamma(p) + log Gamma(q) - log Gamma(p + q).
double log_beta(double p, double q);

// Regularized incomplete gamma P(a,x) = gamma(a,x)/Gamma(a), Q = 1 - P.
// Series for x < a + 1, continued fraction otherwise.
SpecialValue regularized_gamma_p_e(double a, double x);
SpecialValue regularized_gamma_q_e(double a, double x);
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

/// log Q(a, x); finite where Q itself underflows (x up to ~1e300).
double log_regularized_gamma_q(double a, double x);

/// Gamma(a, x) = int_x^inf t^(a-1) e^-t dt. Throws OverflowError when the
/// unregularized value is not representable.
SpecialValue upper_incomplete_gamma_e(double a, double x);
double upper_incomplete_gamma(double a, double x);

/// gamma(a, x) = int_0^x t^(a-1) e^-t dt.
SpecialValue lower_incomplete_gamma_e(double a, double x);
double lower_incomplete_gamma(double a, double x);

/// B(p, q, x) = int_0^x t^(p-1) (1-t)^(q-1) dt by Lentz continued fraction,
/// with the reflection B(p,q) - B(q,p,1-x) past the turning point.
SpecialValue incomplete_beta_e(double p, double q, double x);
double incomplete_beta(double p, double q, double x);

// Finite binomial-sum forms of the incomplete beta function.
//
//   binomial_sum(nu, m, x)           = sum_{j<m} C(m-1,j) (-x)^j/(j+nu)
//   beta_binomial_sum(nu, m, x)      = x^nu binomial_sum(nu, m, x)
//                                    = B(nu, m, x),            m >= 1 integer
//   beta_half_binomial_sum(k, m, x)  = sum_{j<=k} (-1)^j C(k,j)
//                                        (1-(1-x)^(j+m+1/2))/(j+m+1/2)
//                                    = B(k+1, m+1/2, x),       k, m >= 0
//
// Sums with more than 30 terms, or whose double-precision error estimate is
// too large, are accumulated in quad precision. When the estimated
// cancellation exceeds what the working precision supports (1e6 at double
// precision) the value is taken from incomplete_beta instead.
SpecialValue binomial_sum(double nu, int m, double x);
SpecialValue beta_binomial_sum(double nu, int m, double x);
SpecialValue beta_half_binomial_sum(int k, int m, double x);

/// 2F1(1, n-1/2; 3/2; x) for integer n >= 2, 0 <= x < 1, by the finite sum
/// (1/(2(1-x)^(n-1))) sum_{j<=n-2} C(n-2,j) (-x)^j / (j+1/2).
SpecialValue hyp2f1_three_halves(int n, double x);

/// 2F1(1, n-1/2; (n+1)/2; x) for integer n >= 2, 0 <= x < 1, by the
/// even/odd finite sums in k = floor(n/2).
SpecialValue hyp2f1_half_n(int n, double x);

/// 2F1(1, b; c; x), 0 <= x < 1, c not a nonpositive integer. The two families
/// (b, c) = (n-1/2, 3/2) and (n-1/2, (n+1)/2), n >= 2 integer, are routed to
/// the finite sums above; other parameters use the incomplete-beta identity
/// when c > 1, b > c - 1 and x > 1/2, else the defining series.
SpecialValue gauss_2f1_unit_e(double b, double c, double x);
double gauss_2f1_unit(double b, double c, double x);

/// (2/sqrt(pi)) int_0^x e^(-t^2) dt.
double erf(double x);
double erfc(double x);

}  // namespace eigcount::specfun
