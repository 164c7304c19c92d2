#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "eigcount/tensor.hpp"

// Counting real eigenpair classes of a polynomial system f by solving
// f(v) - lambda v = 0, <a, v> = 1 over C with a total-degree homotopy.

namespace eigcount {

/// A real eigenpair class, represented with |v| = 1 and the first nonzero
/// coordinate of v positive.
struct Eigenclass {
  std::vector<double> v;
  double lambda = 0.0;
  double residual = 0.0;  // |f(v) - lambda v|
};

struct HomotopyConfig {
  double initial_step = 0.01;
  double min_step = 1e-14;
  double max_step = 0.05;
  /// Relative Newton-update size that counts as converged while tracking.
  double corrector_tolerance = 1e-9;
  int newton_iterations = 3;
  /// |Im x_j| < realness_threshold * max(1, |x_j|) after endpoint refinement.
  double realness_threshold = 1e-8;
  /// Endpoints closer than this (relative) are the same class.
  double dedup_distance = 1e-6;
  /// Paths whose chart coordinates exceed this norm are taken to diverge.
  double divergence_norm = 1e8;
  std::complex<double> gamma{1.0, 0.0};
  std::vector<double> chart;  // unit vector a of length n

  /// Random gamma on the unit circle and random unit chart vector, drawn from
  /// the stream (seed, stream, attempt).
  static HomotopyConfig randomized(int n, std::uint64_t seed, std::uint64_t stream,
                                   std::uint32_t attempt);
  void validate(int n) const;
};

struct HomotopyDiagnostics {
  int paths = 0;
  int finite_endpoints = 0;
  int diverged = 0;
  int step_underflows = 0;
  int singular_endpoints = 0;
  int duplicates = 0;
  bool conjugate_pairing = true;
  bool zero_eigenvalue = false;
  int attempts = 1;
};

struct HomotopyResult {
  int real_count = 0;
  int complex_count = 0;
  std::vector<Eigenclass> real_classes;
  HomotopyDiagnostics diagnostics;
  /// complex_count == D(n,d) and non-real classes pair up under conjugation.
  bool complete = false;
};

/// One homotopy solve with the given gamma and chart.
HomotopyResult count_classes_homotopy(const PolySystem& f, const HomotopyConfig& cfg);

/// Solves with randomized gamma/chart, retrying with fresh randomization
/// while the result is incomplete, up to 1 + max_retries attempts. The last
/// attempt's result is returned (complete == false if all failed).
HomotopyResult count_classes_homotopy_retrying(const PolySystem& f, std::uint64_t seed,
                                               std::uint64_t stream, int max_retries = 3,
                                               const HomotopyConfig& base = {});

}  // namespace eigcount
