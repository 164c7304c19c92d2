#pragma once

#include <cstdint>
#include <map>

namespace eigcount {

/// Streaming mean / second central moment (Welford), mergeable (Chan et al.).
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    const double total = static_cast<double>(count + other.count);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) *
                         static_cast<double>(other.count) / total;
    count += other.count;
  }

  double sample_variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Two-sample chi-square homogeneity test on two count histograms
/// (category -> frequency). Categories with zero total are dropped.
ChiSquareResult chi_square_two_sample(const std::map<int, std::uint64_t>& a,
                                      const std::map<int, std::uint64_t>& b);

}  // namespace eigcount
