#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <json.hpp>

#include "eigcount/density.hpp"
#include "eigcount/homotopy.hpp"

// Monte-Carlo counting of real eigenpair classes of sampled systems.

namespace eigcount {

enum class Sampler { contraction, bombieri_weyl };

struct CountHistogram {
  std::map<int, std::uint64_t> counts;  // class count -> frequency
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  ProblemShape shape{1, 1};
  /// Samples discarded: incomplete homotopy after all retries, degenerate
  /// input, or a count breaking the parity/bound invariants.
  std::uint64_t failures = 0;
  /// Discarded samples whose count broke parity or the D(n,d) bound.
  std::uint64_t invariant_violations = 0;
  /// Homotopy attempts beyond the first, summed over samples.
  std::uint64_t retries = 0;

  std::uint64_t counted() const;
  /// Mean and standard error of the per-sample count over counted samples.
  EstimateWithError estimate() const;
  /// Throws std::logic_error if the histogram invariants do not hold.
  void check_invariants() const;
};

struct ExperimentConfig {
  Sampler sampler = Sampler::contraction;
  unsigned threads = 0;
  int max_retries = 3;
  /// Abort with FailureRateExceeded above this fraction of discarded samples.
  double max_failure_rate = 0.05;
  HomotopyConfig homotopy{};
};

/// Real eigenpair class count of one system: 1 for n = 1, Sturm for n = 2,
/// homotopy for n >= 3. Returns -1 when the homotopy stays incomplete.
int count_real_classes(const PolySystem& f, std::uint64_t seed, std::uint64_t stream,
                       const ExperimentConfig& cfg, int* attempts = nullptr);

/// Samples `samples` systems (sample i uses stream i under `seed`) and
/// histograms their real class counts. Output is independent of the
/// thread count.
CountHistogram run_experiment(const ProblemShape& shape, std::uint64_t samples,
                              std::uint64_t seed, const ExperimentConfig& cfg = {});

/// CSV with header `count,frequency`, one row per observed count.
void write_histogram_csv(const CountHistogram& h, const std::filesystem::path& path);
/// {n, d, samples, seed, failures, mean, std_error}
nlohmann::json histogram_summary(const CountHistogram& h);

}  // namespace eigcount
