#include "eigcount/density.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "eigcount/errors.hpp"
#include "eigcount/parallel.hpp"
#include "eigcount/rng.hpp"
#include "eigcount/specfun.hpp"
#include "eigcount/stats.hpp"

namespace eigcount {
namespace {

using specfun::log_gamma;

constexpr double kQuadratureDoublingTolerance = 1e-10;
constexpr std::uint64_t kMonteCarloBlock = 4096;

// e^{s/2} Gamma(m, s) / Gamma(m) + 2^{m-1} (s/2)^{m/2} gamma(m/2, s/2) / Gamma(m)
// for m >= 1, s >= 0. At s = 0 the second term is dropped (its limit is 0).
double gamma_bracket(int m, double s) {
  const double upper = std::exp(0.5 * s + specfun::log_regularized_gamma_q(m, s));
  if (s == 0.0) return upper;
  const double h = 0.5 * s;
  const double lower = std::exp((m - 1) * std::numbers::ln2 + 0.5 * m * std::log(h) +
                                log_gamma(0.5 * m) - log_gamma(m)) *
                       specfun::regularized_gamma_p(0.5 * m, h);
  return upper + lower;
}

double standard_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double abs_det_in_place(Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  double product = 1.0;
  double log_sum = 0.0;
  const bool log_domain = n > 30;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    m.col(k).tail(n - k).cwiseAbs().maxCoeff(&pivot);
    pivot += k;
    if (pivot != k) m.row(k).swap(m.row(pivot));
    const double diag = m(k, k);
    if (diag == 0.0) return 0.0;
    if (log_domain) {
      log_sum += std::log(std::abs(diag));
    } else {
      product *= std::abs(diag);
    }
    if (k + 1 < n) {
      m.col(k).tail(n - k - 1) /= diag;
      m.bottomRightCorner(n - k - 1, n - k - 1).noalias() -=
          m.col(k).tail(n - k - 1) * m.row(k).tail(n - k - 1);
    }
  }
  return log_domain ? std::exp(log_sum) : product;
}


double simpson(const std::function<double(double)>& g, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = g(lm);
  const double frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_gauss_hermite(int n_minus_1, int d, int nodes) {
  const auto rule = gauss_hermite_rule(nodes);
  double sum = 0.0;
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f_density(n_minus_1, d, std::numbers::sqrt2 * rule.nodes[i]);
    weight_sum += rule.weights[i];
  }
  return sum / weight_sum;
}

double integrate_simpson(int n_minus_1, int d, int panels) {
  const auto g = [&](double x) { return f_density(n_minus_1, d, x) * standard_normal_pdf(x); };
  // phi(40) underflows; F grows only polynomially.
  constexpr double kUpper = 40.0;
  double total = 0.0;
  const double width = kUpper / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = p * width;
    const double b = a + width;
    const double fa = g(a);
    const double fb = g(b);
    const double fm = g(0.5 * (a + b));
    const double whole = width / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson(g, a, b, fa, fm, fb, whole, 1e-15, 40);
  }
  return 2.0 * total;
}

double integrate(int n_minus_1, int d, const QuadratureConfig& cfg) {
  if (cfg.scheme == QuadratureScheme::gauss_hermite) {
    return integrate_gauss_hermite(n_minus_1, d, cfg.node_count);
  }
  return integrate_simpson(n_minus_1, d, cfg.node_count);
}

}  // namespace

GaussHermiteRule gauss_hermite_rule(int node_count) {
  if (node_count < 2) throw DomainError("gauss_hermite_rule: need at least 2 nodes");
  const int n = node_count;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("gauss_hermite_rule: tridiagonal eigensolver failed");
  }

  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi_quarter = std::pow(std::numbers::pi, -0.25);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    double weight = std::sqrt(std::numbers::pi) * v0 * v0;
    // Newton on the orthonormal recurrence; p_N'(x) = sqrt(2N) p_{N-1}(x).
    for (int iter = 0; iter < 3; ++iter) {
      double p_prev = 0.0;
      double p = pi_quarter;
      for (int k = 0; k < n; ++k) {
        const double next = x * std::sqrt(2.0 / (k + 1)) * p - std::sqrt(double(k) / (k + 1)) * p_prev;
        p_prev = p;
        p = next;
      }
      const double dp = std::sqrt(2.0 * n) * p_prev;
      if (!std::isfinite(p) || !std::isfinite(dp) || dp == 0.0) break;
      x -= p / dp;
      weight = 1.0 / (n * p_prev * p_prev);
    }
    rule.nodes[i] = x;
    rule.weights[i] = weight;
  }
  return rule;
}

double f_density(int n, int d, double lambda) {
  if (n < 0) throw DomainError("f_density: n must be nonnegative");
  if (d < 1) throw DomainError("f_density: d must be positive");
  if (n == 0) return 1.0;
  return std::exp(0.5 * n * std::log(double(d))) * gamma_bracket(n, lambda * lambda / d);
}

double expected_abs_det(int n, double t) {
  if (n < 1) throw DomainError("expected_abs_det: n must be positive");
  const double log_pre = 0.5 * n * std::numbers::ln2 - 0.5 * std::log(std::numbers::pi) +
                         log_gamma(0.5 * (n + 1));
  return std::exp(log_pre) * gamma_bracket(n, t * t);
}

EstimateWithError mc_abs_det(int n, double t, std::uint64_t samples, std::uint64_t seed,
                             unsigned threads) {
  if (n < 1) throw DomainError("mc_abs_det: n must be positive");
  if (samples < 100) throw DomainError("mc_abs_det: need at least 100 samples");
  const std::uint64_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<Moments> partial(blocks);
  for_each_block(samples, kMonteCarloBlock, threads,
                 [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
                   Eigen::MatrixXd m(n, n);
                   Moments acc;
                   for (std::uint64_t s = begin; s < end; ++s) {
                     GaussianStream gauss(seed, s);
                     for (int i = 0; i < n; ++i)
                       for (int j = 0; j < n; ++j) m(i, j) = gauss();
                     m.diagonal().array() += t;
                     acc.add(abs_det_in_place(m));
                   }
                   partial[b] = acc;
                 });
  Moments total;
  for (const auto& p : partial) total.merge(p);
  const double variance = total.m2 / static_cast<double>(total.count - 1);
  return {total.mean, std::sqrt(variance / static_cast<double>(total.count)), samples, seed};
}

double j_density(int n, int d, double lambda) {
  if (n < 2) throw DomainError("j_density: n must be >= 2");
  if (d < 1) throw DomainError("j_density: d must be positive");
  const double log_pre = 0.5 * (n - 1) * std::log(double(d)) + log_gamma(0.5 * n) -
                         0.5 * n * std::log(std::numbers::pi);
  return std::exp(log_pre) * gamma_bracket(n - 1, lambda * lambda / d) *
         standard_normal_pdf(lambda);
}

ExpectationValue expected_count_quadrature(const ProblemShape& shape, const QuadratureConfig& cfg,
                                           QuadratureDiagnostics* diagnostics) {
  if (cfg.node_count < 2) throw DomainError("QuadratureConfig: node_count must be >= 2");
  if (shape.n() == 1) {
    if (diagnostics) *diagnostics = {};
    return {1.0, Route::quadrature, shape};
  }
  const double value = integrate(shape.n() - 1, shape.d(), cfg);
  if (diagnostics) {
    QuadratureConfig doubled = cfg;
    doubled.node_count *= 2;
    const double refined = integrate(shape.n() - 1, shape.d(), doubled);
    diagnostics->doubling_change = std::abs(value - refined) / std::abs(refined);
    diagnostics->converged = diagnostics->doubling_change <= kQuadratureDoublingTolerance;
  }
  return {value, Route::quadrature, shape};
}

}  // namespace eigcount
