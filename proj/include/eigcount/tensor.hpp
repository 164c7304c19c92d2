#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "eigcount/closedform.hpp"

// Gaussian tensors, homogeneous polynomial systems, the contraction map
// between them, and Bombieri-Weyl sampling.

namespace eigcount {

/// Exponent vectors alpha with |alpha| = d in n variables, in lexicographic
/// order with X_1^d first.
std::vector<std::vector<int>> monomial_exponents(int n, int d);

/// Multinomial coefficient d! / (alpha_1! ... alpha_n!).
double multinomial(std::span<const int> alpha);

/// Order-(d+1) tensor with n^{d+1} entries, row-major in (i_0, ..., i_d).
class GaussianTensor {
 public:
  GaussianTensor(ProblemShape shape, std::vector<double> entries);

  const ProblemShape& shape() const { return shape_; }
  std::span<const double> entries() const { return entries_; }
  double operator()(std::span<const int> index) const;

 private:
  ProblemShape shape_;
  std::vector<double> entries_;
};

/// n homogeneous degree-d polynomials in n variables, stored as dense
/// monomial coefficients over the common exponent list.
class PolySystem {
 public:
  explicit PolySystem(ProblemShape shape);

  const ProblemShape& shape() const { return shape_; }
  int n() const { return shape_.n(); }
  int d() const { return shape_.d(); }
  const std::vector<std::vector<int>>& exponents() const { return *exponents_; }
  std::size_t monomial_count() const { return exponents_->size(); }

  /// Monomial-basis coefficient of X^alpha (alpha = exponents()[m]) in f_j.
  double coeff(int j, std::size_t m) const { return coeffs_[j * monomial_count() + m]; }
  double& coeff(int j, std::size_t m) { return coeffs_[j * monomial_count() + m]; }
  /// Index of an exponent vector; throws DomainError if |alpha| != d.
  std::size_t monomial_index(std::span<const int> alpha) const;

  /// Coefficient in the Bombieri-Weyl basis sqrt(C(d,alpha)) X^alpha.
  double bw_coeff(int j, std::size_t m) const;
  void set_bw_coeff(int j, std::size_t m, double value);

  /// f(v) for real or complex v.
  template <class Scalar>
  void evaluate(std::span<const Scalar> v, std::span<Scalar> out) const;
  /// f(v) and the Jacobian (row-major n x n, jac[j*n + i] = d f_j / d v_i).
  template <class Scalar>
  void evaluate_with_jacobian(std::span<const Scalar> v, std::span<Scalar> value,
                              std::span<Scalar> jac) const;

 private:
  ProblemShape shape_;
  std::shared_ptr<const std::vector<std::vector<int>>> exponents_;
  std::vector<double> coeffs_;
};

/// Entries iid N(0,1) from the counter-based stream (seed, stream).
GaussianTensor sample_gaussian_tensor(const ProblemShape& shape, std::uint64_t seed,
                                      std::uint64_t stream = 0);

/// f_A(X) = A X^d: the coefficient of X^alpha in f_j sums A_{j,i_1..i_d} over
/// all index tuples with X_{i_1} ... X_{i_d} = X^alpha.
PolySystem contract(const GaussianTensor& tensor);

/// System with iid N(0,1) Bombieri-Weyl coefficients.
PolySystem sample_bw_system(const ProblemShape& shape, std::uint64_t seed,
                            std::uint64_t stream = 0);

struct BwVarianceReport {
  /// z-score of the empirical variance of every BW coefficient, indexed
  /// [j * monomial_count + m].
  std::vector<double> z_scores;
  double max_abs_z = 0.0;
  /// Bonferroni-adjusted two-sided p-value of max_abs_z.
  double adjusted_p_value = 1.0;
  bool passed = false;  // all |z| < 4
};

/// Samples gaussian tensors, contracts them, and tests that every
/// Bombieri-Weyl coefficient has unit variance. Requires samples >= 1e4.
BwVarianceReport bw_variance_test(const ProblemShape& shape, std::uint64_t samples,
                                  std::uint64_t seed, unsigned threads = 0);

}  // namespace eigcount
