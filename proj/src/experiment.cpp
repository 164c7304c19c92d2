#include "eigcount/experiment.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "eigcount/errors.hpp"
#include "eigcount/parallel.hpp"
#include "eigcount/sturm.hpp"

namespace eigcount {
namespace {

constexpr std::uint64_t kBlock = 64;

struct BlockTally {
  std::map<int, std::uint64_t> counts;
  std::uint64_t failures = 0;
  std::uint64_t violations = 0;
  std::uint64_t retries = 0;
};

}  // namespace

std::uint64_t CountHistogram::counted() const {
  std::uint64_t total = 0;
  for (const auto& [count, freq] : counts) total += freq;
  return total;
}

EstimateWithError CountHistogram::estimate() const {
  EstimateWithError e;
  e.samples = counted();
  e.seed = seed;
  if (e.samples == 0) return e;
  double sum = 0.0;
  for (const auto& [count, freq] : counts) sum += double(count) * double(freq);
  e.mean = sum / double(e.samples);
  if (e.samples > 1) {
    double ss = 0.0;
    for (const auto& [count, freq] : counts) ss += double(freq) * (count - e.mean) * (count - e.mean);
    e.std_error = std::sqrt(ss / double(e.samples - 1) / double(e.samples));
  }
  return e;
}

void CountHistogram::check_invariants() const {
  if (counted() + failures != samples) {
    throw std::logic_error("CountHistogram: frequencies + failures != samples");
  }
  const auto bound = dnd_exact(shape);
  for (const auto& [count, freq] : counts) {
    if (count < 0 || bound < count) {
      throw std::logic_error("CountHistogram: count " + std::to_string(count) + " exceeds D(n,d)");
    }
    if ((bound - count) % 2 != 0) {
      throw std::logic_error("CountHistogram: count " + std::to_string(count) +
                             " has the wrong parity");
    }
  }
}

int count_real_classes(const PolySystem& f, std::uint64_t seed, std::uint64_t stream,
                       const ExperimentConfig& cfg, int* attempts) {
  if (attempts) *attempts = 1;
  if (f.n() == 1) return 1;
  if (f.n() == 2) return static_cast<int>(count_classes_n2(f));
  const auto result = count_classes_homotopy_retrying(f, seed, stream, cfg.max_retries, cfg.homotopy);
  if (attempts) *attempts = result.diagnostics.attempts;
  return result.complete ? result.real_count : -1;
}

CountHistogram run_experiment(const ProblemShape& shape, std::uint64_t samples,
                              std::uint64_t seed, const ExperimentConfig& cfg) {
  if (samples < 1) throw DomainError("run_experiment: need at least one sample");
  const auto bound = dnd_exact(shape);
  const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<BlockTally> tallies(blocks);

  for_each_block(samples, kBlock, cfg.threads,
                 [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
                   BlockTally tally;
                   for (std::uint64_t s = begin; s < end; ++s) {
                     int count = -1;
                     int attempts = 1;
                     try {
                       const PolySystem f = cfg.sampler == Sampler::contraction
                                                ? contract(sample_gaussian_tensor(shape, seed, s))
                                                : sample_bw_system(shape, seed, s);
                       count = count_real_classes(f, seed, s, cfg, &attempts);
                     } catch (const DegenerateInputError&) {
                       count = -1;
                     }
                     tally.retries += attempts - 1;
                     if (count < 0) {
                       ++tally.failures;
                     } else if (bound < count || (bound - count) % 2 != 0) {
                       ++tally.failures;
                       ++tally.violations;
                     } else {
                       ++tally.counts[count];
                     }
                   }
                   tallies[b] = std::move(tally);
                 });

  CountHistogram h;
  h.samples = samples;
  h.seed = seed;
  h.shape = shape;
  for (const auto& t : tallies) {
    for (const auto& [count, freq] : t.counts) h.counts[count] += freq;
    h.failures += t.failures;
    h.invariant_violations += t.violations;
    h.retries += t.retries;
  }
  if (double(h.failures) > cfg.max_failure_rate * double(samples)) {
    throw FailureRateExceeded("run_experiment: " + std::to_string(h.failures) + " of " +
                              std::to_string(samples) + " samples failed");
  }
  return h;
}

void write_histogram_csv(const CountHistogram& h, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "count,frequency\n";
  for (const auto& [count, freq] : h.counts) out << count << ',' << freq << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

nlohmann::json histogram_summary(const CountHistogram& h) {
  const auto e = h.estimate();
  return {{"n", h.shape.n()},         {"d", h.shape.d()},       {"samples", h.samples},
          {"seed", h.seed},           {"failures", h.failures}, {"mean", e.mean},
          {"std_error", e.std_error}};
}

}  // namespace eigcount
