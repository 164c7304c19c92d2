#include "eigcount/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "eigcount/errors.hpp"
#include "eigcount/parallel.hpp"
#include "eigcount/rng.hpp"
#include "eigcount/specfun.hpp"
#include "eigcount/stats.hpp"

namespace eigcount {
namespace {

void enumerate_exponents(int n, int remaining, int var, std::vector<int>& current,
                         std::vector<std::vector<int>>& out) {
  if (var == n - 1) {
    current[var] = remaining;
    out.push_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = e;
    enumerate_exponents(n, remaining - e, var + 1, current, out);
  }
}

std::shared_ptr<const std::vector<std::vector<int>>> shared_exponents(int n, int d) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<std::vector<int>>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, d}];
  if (!slot) slot = std::make_shared<const std::vector<std::vector<int>>>(monomial_exponents(n, d));
  return slot;
}

std::uint64_t int_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

template <class Scalar>
void fill_powers(std::span<const Scalar> v, int d, std::vector<Scalar>& pw) {
  const std::size_t n = v.size();
  pw.assign(n * (d + 1), Scalar(1));
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 1; k <= d; ++k) pw[i * (d + 1) + k] = pw[i * (d + 1) + k - 1] * v[i];
  }
}

}  // namespace

std::vector<std::vector<int>> monomial_exponents(int n, int d) {
  if (n < 1 || d < 0) throw DomainError("monomial_exponents: need n >= 1, d >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> current(n, 0);
  enumerate_exponents(n, d, 0, current, out);
  return out;
}

double multinomial(std::span<const int> alpha) {
  const int d = std::accumulate(alpha.begin(), alpha.end(), 0);
  double log_value = specfun::log_gamma(d + 1.0);
  for (int a : alpha) log_value -= specfun::log_gamma(a + 1.0);
  return std::round(std::exp(log_value));
}

GaussianTensor::GaussianTensor(ProblemShape shape, std::vector<double> entries)
    : shape_(shape), entries_(std::move(entries)) {
  const std::uint64_t expected = int_pow(shape_.n(), shape_.d() + 1);
  if (entries_.size() != expected) {
    throw DomainError("GaussianTensor: expected " + std::to_string(expected) + " entries, got " +
                      std::to_string(entries_.size()));
  }
  for (double e : entries_) {
    if (!std::isfinite(e)) throw DomainError("GaussianTensor: entries must be finite");
  }
}

double GaussianTensor::operator()(std::span<const int> index) const {
  std::size_t flat = 0;
  for (int i : index) flat = flat * shape_.n() + static_cast<std::size_t>(i);
  return entries_.at(flat);
}

PolySystem::PolySystem(ProblemShape shape)
    : shape_(shape),
      exponents_(shared_exponents(shape.n(), shape.d())),
      coeffs_(shape.n() * exponents_->size(), 0.0) {}

std::size_t PolySystem::monomial_index(std::span<const int> alpha) const {
  const auto& ex = *exponents_;
  const auto it = std::find_if(ex.begin(), ex.end(), [&](const std::vector<int>& e) {
    return std::equal(e.begin(), e.end(), alpha.begin(), alpha.end());
  });
  if (it == ex.end()) throw DomainError("PolySystem: exponent vector not of degree d");
  return static_cast<std::size_t>(it - ex.begin());
}

double PolySystem::bw_coeff(int j, std::size_t m) const {
  return coeff(j, m) / std::sqrt(multinomial((*exponents_)[m]));
}

void PolySystem::set_bw_coeff(int j, std::size_t m, double value) {
  coeff(j, m) = value * std::sqrt(multinomial((*exponents_)[m]));
}

template <class Scalar>
void PolySystem::evaluate(std::span<const Scalar> v, std::span<Scalar> out) const {
  const int n = this->n();
  const int d = this->d();
  std::vector<Scalar> pw;
  fill_powers(v, d, pw);
  std::fill(out.begin(), out.end(), Scalar(0));
  const auto& ex = *exponents_;
  for (std::size_t m = 0; m < ex.size(); ++m) {
    Scalar mono(1);
    for (int i = 0; i < n; ++i) mono *= pw[i * (d + 1) + ex[m][i]];
    for (int j = 0; j < n; ++j) out[j] += coeff(j, m) * mono;
  }
}

template <class Scalar>
void PolySystem::evaluate_with_jacobian(std::span<const Scalar> v, std::span<Scalar> value,
                                        std::span<Scalar> jac) const {
  const int n = this->n();
  const int d = this->d();
  std::vector<Scalar> pw;
  fill_powers(v, d, pw);
  std::fill(value.begin(), value.end(), Scalar(0));
  std::fill(jac.begin(), jac.end(), Scalar(0));
  const auto& ex = *exponents_;
  std::vector<Scalar> partial(n);
  for (std::size_t m = 0; m < ex.size(); ++m) {
    const auto& alpha = ex[m];
    Scalar mono(1);
    for (int i = 0; i < n; ++i) mono *= pw[i * (d + 1) + alpha[i]];
    for (int i = 0; i < n; ++i) {
      if (alpha[i] == 0) {
        partial[i] = Scalar(0);
        continue;
      }
      Scalar p = Scalar(double(alpha[i])) * pw[i * (d + 1) + alpha[i] - 1];
      for (int l = 0; l < n; ++l) {
        if (l != i) p *= pw[l * (d + 1) + alpha[l]];
      }
      partial[i] = p;
    }
    for (int j = 0; j < n; ++j) {
      const double c = coeff(j, m);
      if (c == 0.0) continue;
      value[j] += c * mono;
      for (int i = 0; i < n; ++i) jac[j * n + i] += c * partial[i];
    }
  }
}

template void PolySystem::evaluate<double>(std::span<const double>, std::span<double>) const;
template void PolySystem::evaluate<std::complex<double>>(std::span<const std::complex<double>>,
                                                         std::span<std::complex<double>>) const;
template void PolySystem::evaluate_with_jacobian<double>(std::span<const double>,
                                                         std::span<double>,
                                                         std::span<double>) const;
template void PolySystem::evaluate_with_jacobian<std::complex<double>>(
    std::span<const std::complex<double>>, std::span<std::complex<double>>,
    std::span<std::complex<double>>) const;

GaussianTensor sample_gaussian_tensor(const ProblemShape& shape, std::uint64_t seed,
                                      std::uint64_t stream) {
  GaussianStream gauss(seed, stream);
  std::vector<double> entries(int_pow(shape.n(), shape.d() + 1));
  for (double& e : entries) e = gauss();
  return GaussianTensor(shape, std::move(entries));
}

PolySystem contract(const GaussianTensor& tensor) {
  const int n = tensor.shape().n();
  const int d = tensor.shape().d();
  PolySystem f(tensor.shape());

  // Map each tail tuple (i_1..i_d), in row-major order, to its monomial.
  const std::uint64_t tuples = int_pow(n, d);
  std::vector<std::size_t> tuple_monomial(tuples);
  std::vector<int> alpha(n);
  for (std::uint64_t t = 0; t < tuples; ++t) {
    std::fill(alpha.begin(), alpha.end(), 0);
    std::uint64_t rest = t;
    for (int k = 0; k < d; ++k) {
      ++alpha[rest % n];
      rest /= n;
    }
    tuple_monomial[t] = f.monomial_index(alpha);
  }

  const auto entries = tensor.entries();
  for (int j = 0; j < n; ++j) {
    for (std::uint64_t t = 0; t < tuples; ++t) {
      f.coeff(j, tuple_monomial[t]) += entries[j * tuples + t];
    }
  }
  return f;
}

PolySystem sample_bw_system(const ProblemShape& shape, std::uint64_t seed, std::uint64_t stream) {
  GaussianStream gauss(seed, stream);
  PolySystem f(shape);
  for (int j = 0; j < shape.n(); ++j) {
    for (std::size_t m = 0; m < f.monomial_count(); ++m) f.set_bw_coeff(j, m, gauss());
  }
  return f;
}

BwVarianceReport bw_variance_test(const ProblemShape& shape, std::uint64_t samples,
                                  std::uint64_t seed, unsigned threads) {
  if (samples < 10000) throw DomainError("bw_variance_test: need at least 1e4 samples");
  const std::size_t coeff_count = shape.n() * PolySystem(shape).monomial_count();
  constexpr std::uint64_t kBlock = 2048;
  const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<std::vector<Moments>> partial(blocks);

  for_each_block(samples, kBlock, threads,
                 [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
                   std::vector<Moments> acc(coeff_count);
                   for (std::uint64_t s = begin; s < end; ++s) {
                     const PolySystem f = contract(sample_gaussian_tensor(shape, seed, s));
                     for (int j = 0; j < shape.n(); ++j) {
                       for (std::size_t m = 0; m < f.monomial_count(); ++m) {
                         acc[j * f.monomial_count() + m].add(f.bw_coeff(j, m));
                       }
                     }
                   }
                   partial[b] = std::move(acc);
                 });

  std::vector<Moments> total(coeff_count);
  for (const auto& block : partial) {
    for (std::size_t c = 0; c < coeff_count; ++c) total[c].merge(block[c]);
  }

  BwVarianceReport report;
  report.z_scores.resize(coeff_count);
  // Var(s^2) = 2 sigma^4 / (N - 1) for normal data with sigma^2 = 1.
  const double se = std::sqrt(2.0 / static_cast<double>(samples - 1));
  for (std::size_t c = 0; c < coeff_count; ++c) {
    report.z_scores[c] = (total[c].sample_variance() - 1.0) / se;
    report.max_abs_z = std::max(report.max_abs_z, std::abs(report.z_scores[c]));
  }
  const double single = specfun::erfc(report.max_abs_z / std::sqrt(2.0));
  report.adjusted_p_value = std::min(1.0, single * static_cast<double>(coeff_count));
  report.passed = report.max_abs_z < 4.0;
  return report;
}

}  // namespace eigcount
