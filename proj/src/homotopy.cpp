#include "eigcount/homotopy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "eigcount/errors.hpp"
#include "eigcount/rng.hpp"

namespace eigcount {
namespace {

using cd = std::complex<double>;
using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

constexpr double kEndpointResidual = 1e-12;
constexpr double kSingularRcond = 1e-13;
constexpr int kEndpointNewton = 30;
// Stream offset separating homotopy randomization from tensor sampling.
constexpr std::uint32_t kHomotopySubstream = 0x40000000;

// Target F(v, lambda) = (f(v) - lambda v, <a, v> - 1), start
// G = (v_i^D - c_i, lambda - c_lambda), H = (1 - t) gamma G + t F.
class Homotopy {
 public:
  Homotopy(const PolySystem& f, const HomotopyConfig& cfg, std::vector<cd> start_constants)
      : f_(f),
        cfg_(cfg),
        n_(f.n()),
        degree_(std::max(f.d(), 2)),
        c_(std::move(start_constants)),
        fv_(n_),
        jf_(n_ * n_) {}

  int n() const { return n_; }
  int degree() const { return degree_; }
  const std::vector<cd>& start_constants() const { return c_; }

  void target(const VecC& x, VecC* value, MatC* jac) {
    const std::span<const cd> v(x.data(), n_);
    f_.evaluate_with_jacobian<cd>(v, fv_, jf_);
    const cd lambda = x(n_);
    for (int j = 0; j < n_; ++j) {
      (*value)(j) = fv_[j] - lambda * x(j);
      for (int i = 0; i < n_; ++i) (*jac)(j, i) = jf_[j * n_ + i];
      (*jac)(j, j) -= lambda;
      (*jac)(j, n_) = -x(j);
    }
    cd chart(-1.0, 0.0);
    for (int i = 0; i < n_; ++i) {
      chart += cfg_.chart[i] * x(i);
      (*jac)(n_, i) = cfg_.chart[i];
    }
    (*value)(n_) = chart;
    (*jac)(n_, n_) = 0.0;
  }

  void start(const VecC& x, VecC* value, MatC* jac) const {
    jac->setZero();
    for (int i = 0; i < n_; ++i) {
      const cd p = std::pow(x(i), degree_ - 1);
      (*value)(i) = p * x(i) - c_[i];
      (*jac)(i, i) = double(degree_) * p;
    }
    (*value)(n_) = x(n_) - c_[n_];
    (*jac)(n_, n_) = 1.0;
  }

  // H(x,t), H_x, and H_t.
  void eval(const VecC& x, double t, VecC* h, MatC* hx, VecC* ht) {
    VecC fval(n_ + 1), gval(n_ + 1);
    MatC fjac(n_ + 1, n_ + 1), gjac(n_ + 1, n_ + 1);
    target(x, &fval, &fjac);
    start(x, &gval, &gjac);
    const cd g = cfg_.gamma;
    *h = (1.0 - t) * g * gval + t * fval;
    *hx = (1.0 - t) * g * gjac + t * fjac;
    if (ht) *ht = fval - g * gval;
  }

 private:
  const PolySystem& f_;
  const HomotopyConfig& cfg_;
  int n_;
  int degree_;
  std::vector<cd> c_;
  std::vector<cd> fv_;
  std::vector<cd> jf_;
};

enum class PathOutcome { finite, diverged, underflow, singular };

struct PathEnd {
  PathOutcome outcome;
  VecC x;
};

// Newton on the target system at t = 1.
bool refine_endpoint(Homotopy& hom, VecC& x) {
  const int m = hom.n() + 1;
  VecC value(m);
  MatC jac(m, m);
  for (int iter = 0; iter < kEndpointNewton; ++iter) {
    hom.target(x, &value, &jac);
    Eigen::PartialPivLU<MatC> lu(jac);
    if (!(lu.rcond() > kSingularRcond)) return false;
    const VecC dx = lu.solve(-value);
    x += dx;
    if (!x.allFinite()) return false;
    if (dx.norm() <= 1e-15 * (1.0 + x.norm())) break;
  }
  hom.target(x, &value, &jac);
  Eigen::PartialPivLU<MatC> lu(jac);
  return value.norm() <= kEndpointResidual * (1.0 + x.norm()) && lu.rcond() > kSingularRcond;
}

PathEnd track(Homotopy& hom, const HomotopyConfig& cfg, VecC x) {
  const int m = hom.n() + 1;
  VecC h(m), ht(m);
  MatC hx(m, m);
  double t = 0.0;
  double step = cfg.initial_step;
  int successes = 0;

  while (t < 1.0) {
    if (x.norm() > cfg.divergence_norm) return {PathOutcome::diverged, x};
    const double dt = std::min(step, 1.0 - t);
    const double t_next = (dt == 1.0 - t) ? 1.0 : t + dt;

    // Euler predictor: dx/dt = -H_x^{-1} H_t.
    hom.eval(x, t, &h, &hx, &ht);
    VecC pred = x + dt * Eigen::PartialPivLU<MatC>(hx).solve(-ht);

    bool converged = false;
    for (int iter = 0; iter < cfg.newton_iterations && pred.allFinite(); ++iter) {
      hom.eval(pred, t_next, &h, &hx, nullptr);
      const VecC dx = Eigen::PartialPivLU<MatC>(hx).solve(-h);
      pred += dx;
      if (dx.norm() <= cfg.corrector_tolerance * (1.0 + pred.norm())) {
        converged = true;
        break;
      }
    }

    if (converged && pred.allFinite()) {
      x = pred;
      t = t_next;
      if (++successes >= 3) {
        step = std::min(2.0 * step, cfg.max_step);
        successes = 0;
      }
    } else {
      step *= 0.5;
      successes = 0;
      if (step < cfg.min_step) {
        // Paths heading to infinity stall near t = 1.
        const bool near_end = 1.0 - t < 1e-6;
        return {near_end ? PathOutcome::diverged : PathOutcome::underflow, x};
      }
    }
  }

  if (x.norm() > cfg.divergence_norm) return {PathOutcome::diverged, x};
  if (!refine_endpoint(hom, x)) return {PathOutcome::singular, x};
  return {PathOutcome::finite, x};
}

bool is_real(const VecC& x, double threshold) {
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (std::abs(x(j).imag()) >= threshold * std::max(1.0, std::abs(x(j)))) return false;
  }
  return true;
}

double relative_distance(const VecC& a, const VecC& b) {
  return (a - b).norm() / (1.0 + std::max(a.norm(), b.norm()));
}

Eigenclass to_eigenclass(const PolySystem& f, const VecC& x) {
  const int n = f.n();
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = x(i).real();
  double norm = 0.0;
  for (double c : v) norm += c * c;
  norm = std::sqrt(norm);
  double scale = 1.0 / norm;
  for (double c : v) {
    if (c != 0.0) {
      if (c < 0.0) scale = -scale;
      break;
    }
  }
  for (double& c : v) c *= scale;
  // (v, lambda) ~ (s v, s^{d-1} lambda)
  const double lambda = x(n).real() * std::pow(scale, f.d() - 1);

  std::vector<double> fv(n);
  f.evaluate<double>(v, fv);
  double residual = 0.0;
  for (int i = 0; i < n; ++i) residual += (fv[i] - lambda * v[i]) * (fv[i] - lambda * v[i]);
  return {std::move(v), lambda, std::sqrt(residual)};
}

}  // namespace

HomotopyConfig HomotopyConfig::randomized(int n, std::uint64_t seed, std::uint64_t stream,
                                          std::uint32_t attempt) {
  GaussianStream rng(seed, stream, kHomotopySubstream + attempt);
  HomotopyConfig cfg;
  const double angle = 2.0 * std::numbers::pi * rng.uniform();
  cfg.gamma = std::polar(1.0, angle);
  cfg.chart.resize(n);
  double norm = 0.0;
  for (double& a : cfg.chart) {
    a = rng();
    norm += a * a;
  }
  norm = std::sqrt(norm);
  for (double& a : cfg.chart) a /= norm;
  return cfg;
}

void HomotopyConfig::validate(int n) const {
  if (!(0.0 < min_step && min_step < initial_step && initial_step < 1.0)) {
    throw DomainError("HomotopyConfig: need 0 < min_step < initial_step < 1");
  }
  if (!(realness_threshold > 0.0)) throw DomainError("HomotopyConfig: realness threshold must be > 0");
  if (newton_iterations < 1) throw DomainError("HomotopyConfig: need at least one Newton step");
  if (static_cast<int>(chart.size()) != n) {
    throw DomainError("HomotopyConfig: chart vector must have length n = " + std::to_string(n));
  }
  if (std::abs(std::abs(gamma) - 1.0) > 1e-12) throw DomainError("HomotopyConfig: |gamma| must be 1");
}

HomotopyResult count_classes_homotopy(const PolySystem& f, const HomotopyConfig& cfg) {
  const int n = f.n();
  if (n < 2) throw DomainError("count_classes_homotopy: need n >= 2");
  cfg.validate(n);

  // Start constants derive from gamma and chart so a config fully
  // determines the run.
  std::vector<cd> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double phase = std::arg(cfg.gamma) * (i + 2) + (i < n ? cfg.chart[i] : 0.5);
    c[i] = std::polar(1.0, phase);
  }
  Homotopy hom(f, cfg, c);
  const int degree = hom.degree();

  std::vector<std::vector<cd>> roots(n);
  for (int i = 0; i < n; ++i) {
    const cd base = std::pow(c[i], 1.0 / degree);
    for (int k = 0; k < degree; ++k) {
      roots[i].push_back(base * std::polar(1.0, 2.0 * std::numbers::pi * k / degree));
    }
  }

  HomotopyResult result;
  auto& diag = result.diagnostics;
  std::vector<VecC> endpoints;
  std::vector<int> index(n, 0);
  for (;;) {
    VecC x(n + 1);
    for (int i = 0; i < n; ++i) x(i) = roots[i][index[i]];
    x(n) = c[n];
    ++diag.paths;
    const PathEnd end = track(hom, cfg, x);
    switch (end.outcome) {
      case PathOutcome::finite: {
        const bool duplicate = std::any_of(endpoints.begin(), endpoints.end(), [&](const VecC& e) {
          return relative_distance(e, end.x) < cfg.dedup_distance;
        });
        if (duplicate) {
          ++diag.duplicates;
        } else {
          endpoints.push_back(end.x);
        }
        break;
      }
      case PathOutcome::diverged: ++diag.diverged; break;
      case PathOutcome::underflow: ++diag.step_underflows; break;
      case PathOutcome::singular: ++diag.singular_endpoints; break;
    }
    int pos = 0;
    while (pos < n && ++index[pos] == degree) index[pos++] = 0;
    if (pos == n) break;
  }

  diag.finite_endpoints = static_cast<int>(endpoints.size());
  result.complex_count = diag.finite_endpoints;
  for (const auto& e : endpoints) {
    if (is_real(e, cfg.realness_threshold)) {
      result.real_classes.push_back(to_eigenclass(f, e));
      if (std::abs(result.real_classes.back().lambda) < 1e-12) diag.zero_eigenvalue = true;
      continue;
    }
    const VecC conj = e.conjugate();
    const bool paired = std::any_of(endpoints.begin(), endpoints.end(), [&](const VecC& o) {
      return relative_distance(o, conj) < cfg.dedup_distance;
    });
    if (!paired) diag.conjugate_pairing = false;
  }
  result.real_count = static_cast<int>(result.real_classes.size());

  const auto expected = dnd_exact(f.shape());
  result.complete = diag.conjugate_pairing && expected == result.complex_count;
  return result;
}

HomotopyResult count_classes_homotopy_retrying(const PolySystem& f, std::uint64_t seed,
                                               std::uint64_t stream, int max_retries,
                                               const HomotopyConfig& base) {
  HomotopyResult result;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    HomotopyConfig cfg = HomotopyConfig::randomized(f.n(), seed, stream, attempt);
    cfg.initial_step = base.initial_step;
    cfg.min_step = base.min_step;
    cfg.max_step = base.max_step;
    cfg.corrector_tolerance = base.corrector_tolerance;
    cfg.newton_iterations = base.newton_iterations;
    cfg.realness_threshold = base.realness_threshold;
    cfg.dedup_distance = base.dedup_distance;
    cfg.divergence_norm = base.divergence_norm;
    result = count_classes_homotopy(f, cfg);
    result.diagnostics.attempts = attempt + 1;
    if (result.complete) break;
  }
  return result;
}

}  // namespace eigcount
