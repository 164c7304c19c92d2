#pragma once

#include <cstdint>
#include <vector>

#include "eigcount/closedform.hpp"

// The lambda-density route: E_{n,d} = E_{lambda ~ N(0,1)} F_{n-1,d}(lambda),
// the determinant moment E|det(A + tI)| it is built from, and a Monte-Carlo
// oracle for that moment.

namespace eigcount {

enum class QuadratureScheme { gauss_hermite, adaptive_simpson };

struct QuadratureConfig {
  int node_count = 200;
  QuadratureScheme scheme = QuadratureScheme::gauss_hermite;
};

struct EstimateWithError {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Nodes and weights for int e^{-x^2} g(x) dx (physicists' convention).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch eigenvalues polished by Newton on the orthonormal recurrence.
GaussHermiteRule gauss_hermite_rule(int node_count);

/// F_{n,d}(lambda); F_{0,d} = 1. Even in lambda.
double f_density(int n, int d, double lambda);

/// E|det(A + t I_n)| for A an n x n standard gaussian matrix.
double expected_abs_det(int n, double t);

/// Monte-Carlo estimate of E|det(A + t I_n)|. Deterministic in `seed` and
/// independent of `threads` (0 = hardware concurrency).
EstimateWithError mc_abs_det(int n, double t, std::uint64_t samples, std::uint64_t seed,
                             unsigned threads = 0);

/// J(e_1, lambda) for n >= 2: the density in lambda of real eigenpairs,
/// up to the sphere-volume factor Gamma(n/2) / sqrt(pi)^n.
double j_density(int n, int d, double lambda);

struct QuadratureDiagnostics {
  /// |I(N) - I(2N)| / |I(2N)| for the configured node count N.
  double doubling_change = 0.0;
  bool converged = true;
};

/// E_{lambda ~ N(0,1)} F_{n-1,d}(lambda). When `diagnostics` is non-null the
/// rule is re-run at twice the node count and the relative change reported;
/// changes above 1e-10 clear `converged`.
ExpectationValue expected_count_quadrature(const ProblemShape& shape,
                                           const QuadratureConfig& cfg = {},
                                           QuadratureDiagnostics* diagnostics = nullptr);

}  // namespace eigcount
