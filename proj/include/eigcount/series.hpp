#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "eigcount/errors.hpp"

namespace eigcount {

/// A formal power series c_0 + c_1 z + ... + c_N z^N modulo z^{N+1}.
/// Binary operations truncate to the smaller order.
template <class T>
class BasicSeries {
 public:
  explicit BasicSeries(std::size_t order) : coeffs_(order + 1, T(0)) {}
  BasicSeries(std::size_t order, std::initializer_list<T> leading) : BasicSeries(order) {
    std::size_t i = 0;
    for (const T& c : leading) {
      if (i > order) break;
      coeffs_[i++] = c;
    }
  }
  explicit BasicSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("BasicSeries: need at least one coefficient");
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& operator[](std::size_t i) const { return coeffs_[i]; }
  T& operator[](std::size_t i) { return coeffs_[i]; }

  /// Same coefficients, truncated or zero-extended to `order`.
  BasicSeries resized(std::size_t order) const {
    BasicSeries out(order);
    const std::size_t m = std::min(order, this->order());
    std::copy_n(coeffs_.begin(), m + 1, out.coeffs_.begin());
    return out;
  }

  friend BasicSeries operator+(const BasicSeries& a, const BasicSeries& b) {
    BasicSeries out(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i <= out.order(); ++i) out[i] = a[i] + b[i];
    return out;
  }
  friend BasicSeries operator-(const BasicSeries& a, const BasicSeries& b) {
    BasicSeries out(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i <= out.order(); ++i) out[i] = a[i] - b[i];
    return out;
  }
  friend BasicSeries operator*(const T& s, BasicSeries a) {
    for (auto& c : a.coeffs_) c *= s;
    return a;
  }

 private:
  std::vector<T> coeffs_;
};

/// Cauchy product truncated at the smaller order.
template <class T>
BasicSeries<T> series_mul(const BasicSeries<T>& a, const BasicSeries<T>& b) {
  BasicSeries<T> out(std::min(a.order(), b.order()));
  for (std::size_t k = 0; k <= out.order(); ++k) {
    T acc(0);
    for (std::size_t i = 0; i <= k; ++i) acc += a[i] * b[k - i];
    out[k] = acc;
  }
  return out;
}

/// q with q * b = a mod z^{N+1}. Throws DomainError when b_0 = 0.
template <class T>
BasicSeries<T> series_div(const BasicSeries<T>& a, const BasicSeries<T>& b) {
  if (b[0] == T(0)) throw DomainError("series_div: divisor has zero constant term");
  BasicSeries<T> q(std::min(a.order(), b.order()));
  for (std::size_t k = 0; k <= q.order(); ++k) {
    T acc = a[k];
    for (std::size_t i = 1; i <= k; ++i) acc -= b[i] * q[k - i];
    q[k] = acc / b[0];
  }
  return q;
}

/// Principal square root (s_0 = +sqrt(a_0)) by Newton's iteration
/// s <- (s + a/s)/2, doubling the number of correct coefficients per step.
template <class T>
BasicSeries<T> series_sqrt(const BasicSeries<T>& a) {
  using std::sqrt;
  if (!(a[0] > T(0))) throw DomainError("series_sqrt: constant term must be positive");
  const std::size_t order = a.order();
  BasicSeries<T> s(0);
  s[0] = sqrt(a[0]);
  std::size_t known = 1;  // coefficients 0..known-1 are exact
  while (known < order + 1) {
    known = std::min(2 * known, order + 1);
    const std::size_t ord = known - 1;
    const auto target = a.resized(ord);
    const auto ext = s.resized(ord);
    s = T(0.5) * (ext + series_div(target, ext));
  }
  return s.resized(order);
}

using TruncatedSeries = BasicSeries<double>;

/// Coefficients c_0..c_order of
///   z (1 - z sqrt(d) + z sqrt(d - 2 z sqrt(d) + 1)) / ((1 - z^2)(1 - z sqrt(d))),
/// so that element n is E_{n,d} (element 0 is 0). Evaluated in quad
/// precision when d > 50 and order > 30.
std::vector<double> generating_coefficients(int d, int order);

}  // namespace eigcount
