#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "eigcount/errors.hpp"
#include "eigcount/experiment.hpp"
#include "eigcount/stats.hpp"

using namespace eigcount;

TEST_CASE("one-dimensional experiment") {
  const auto h = run_experiment({1, 5}, 100, 3);
  CHECK(h.counts.size() == 1);
  CHECK(h.counts.at(1) == 100);
  CHECK(h.failures == 0);
  CHECK(h.estimate().mean == 1.0);
  CHECK(h.estimate().std_error == 0.0);
  CHECK_NOTHROW(h.check_invariants());
  CHECK_THROWS_AS(run_experiment({1, 5}, 0, 3), DomainError);
}

TEST_CASE("two-dimensional experiment matches the expectation") {
  const auto h = run_experiment({2, 2}, 20000, 7);
  const auto e = h.estimate();
  CHECK(h.failures == 0);
  CHECK(std::abs(e.mean - std::numbers::sqrt3) < 3 * e.std_error);
  CHECK_NOTHROW(h.check_invariants());
  for (const auto& [count, freq] : h.counts) CHECK((count == 1 || count == 3));
}

TEST_CASE("experiment output is independent of the thread count") {
  ExperimentConfig one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = run_experiment({2, 3}, 3000, 11, one);
  const auto b = run_experiment({2, 3}, 3000, 11, many);
  CHECK(a.counts == b.counts);
  CHECK(a.failures == b.failures);
  const auto c = run_experiment({3, 2}, 60, 11, one);
  const auto d = run_experiment({3, 2}, 60, 11, many);
  CHECK(c.counts == d.counts);
  CHECK(c.retries == d.retries);
}

TEST_CASE("three-dimensional experiment") {
  const auto h = run_experiment({3, 2}, 200, 13);
  CHECK(h.invariant_violations == 0);
  CHECK(double(h.failures) <= 0.01 * 200);
  CHECK_NOTHROW(h.check_invariants());
  const auto e = h.estimate();
  CHECK(std::abs(e.mean - expected_count_sum({3, 2}).value) < 4 * e.std_error);
}

TEST_CASE("bombieri-weyl and contraction sampling agree") {
  ExperimentConfig bw;
  bw.sampler = Sampler::bombieri_weyl;
  const auto a = run_experiment({2, 2}, 10000, 21);
  const auto b = run_experiment({2, 2}, 10000, 22, bw);
  CHECK(chi_square_two_sample(a.counts, b.counts).p_value > 0.001);
}

TEST_CASE("histogram invariants") {
  CountHistogram h;
  h.shape = ProblemShape(3, 3);
  h.samples = 10;
  h.counts = {{1, 5}, {3, 5}};
  CHECK_NOTHROW(h.check_invariants());
  h.counts = {{2, 10}};
  CHECK_THROWS_AS(h.check_invariants(), std::logic_error);
  h.counts = {{15, 10}};
  CHECK_THROWS_AS(h.check_invariants(), std::logic_error);
  h.counts = {{1, 9}};
  CHECK_THROWS_AS(h.check_invariants(), std::logic_error);
}

TEST_CASE("failure budget aborts the run") {
  ExperimentConfig strict;
  strict.max_retries = 0;
  strict.homotopy.divergence_norm = 1e-3;  // every path counts as diverged
  CHECK_THROWS_AS(run_experiment({3, 2}, 10, 1, strict), FailureRateExceeded);
}

TEST_CASE("histogram export") {
  const auto h = run_experiment({2, 1}, 500, 4);
  const auto path = std::filesystem::temp_directory_path() / "eigcount_hist_test.csv";
  write_histogram_csv(h, path);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  std::string expected = "count,frequency\n";
  for (const auto& [count, freq] : h.counts) {
    expected += std::to_string(count) + "," + std::to_string(freq) + "\n";
  }
  CHECK(text.str() == expected);
  std::filesystem::remove(path);

  const auto j = histogram_summary(h);
  CHECK(j["n"] == 2);
  CHECK(j["d"] == 1);
  CHECK(j["samples"] == 500);
  CHECK(j["seed"] == 4);
  CHECK(j["failures"] == 0);
  CHECK(j["mean"].get<double>() == h.estimate().mean);
  CHECK(j.contains("std_error"));
}
