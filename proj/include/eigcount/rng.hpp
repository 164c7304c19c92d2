#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace eigcount {

/// Philox4x32-10 counter-based generator. A (seed, stream, substream) triple
/// selects an independent sequence, so every Monte-Carlo sample owns its own
/// stream and results do not depend on how samples are spread over workers.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// The bare bijection: ten Philox rounds of `counter` under `key`.
  static Block encrypt(Block counter, Key key);

 private:
  Key key_;
  Block counter_;
  Block buffer_{};
  int used_ = 4;
};

/// Standard normal draws from one Philox stream.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream = 0)
      : engine_(seed, stream, substream) {}

  double operator()() { return dist_(engine_); }
  /// Uniform on [0, 1).
  double uniform() { return std::generate_canonical<double, 53>(engine_); }

 private:
  Philox4x32 engine_;
  std::normal_distribution<double> dist_;
};

}  // namespace eigcount
