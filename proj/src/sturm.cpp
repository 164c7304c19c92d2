#include "eigcount/sturm.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <vector>

#include "eigcount/errors.hpp"

namespace eigcount {
namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kIllConditioned = 1e-10;

template <class T>
T magnitude(const T& v) {
  return v < T(0) ? T(-v) : v;
}

template <class T>
int sign_of(const T& v) {
  return (v > T(0)) - (v < T(0));
}

template <class T>
void trim(std::vector<T>& p) {
  while (!p.empty() && p.back() == T(0)) p.pop_back();
}

template <class T>
T max_abs(const std::vector<T>& p) {
  T m(0);
  for (const auto& c : p) {
    if (magnitude(c) > m) m = magnitude(c);
  }
  return m;
}

// Remainder of a / b (deg a >= deg b >= 0), top coefficients zeroed exactly.
template <class T>
std::vector<T> remainder(std::vector<T> a, const std::vector<T>& b) {
  const std::size_t db = b.size() - 1;
  for (std::size_t i = a.size(); i-- > db;) {
    const T q = a[i] / b[db];
    for (std::size_t k = 0; k < db; ++k) a[i - db + k] -= q * b[k];
    a[i] = T(0);
  }
  a.resize(db);
  return a;
}

// Sign variations of the chain at +inf (leading signs) and -inf.
template <class T>
std::size_t count_from_chain(const std::vector<std::vector<T>>& chain) {
  int var_pos = 0;
  int var_neg = 0;
  int last_pos = 0;
  int last_neg = 0;
  for (const auto& p : chain) {
    const int s = sign_of(p.back());
    const int deg = static_cast<int>(p.size()) - 1;
    const int s_neg = (deg % 2 == 0) ? s : -s;
    if (last_pos != 0 && s != last_pos) ++var_pos;
    if (last_neg != 0 && s_neg != last_neg) ++var_neg;
    last_pos = s;
    last_neg = s_neg;
  }
  return static_cast<std::size_t>(var_neg - var_pos);
}

// Returns false when the floating-point chain is ill-conditioned.
template <class T>
bool sturm_chain_count(std::vector<T> p, bool floating, std::size_t* count) {
  trim(p);
  if (p.empty()) throw DegenerateInputError("sturm_count: zero polynomial");
  if (p.size() == 1) {
    *count = 0;
    return true;
  }
  std::vector<T> dp(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) dp[i - 1] = p[i] * T(static_cast<double>(i));

  auto normalize = [&](std::vector<T>& q) {
    if (!floating) return;
    const T m = max_abs(q);
    for (auto& c : q) c /= m;
  };
  normalize(p);
  normalize(dp);

  std::vector<std::vector<T>> chain{p, dp};
  while (chain.back().size() > 1) {
    const auto& dividend = chain[chain.size() - 2];
    auto r = remainder(dividend, chain.back());
    if (floating) {
      const T lead = r.empty() ? T(0) : magnitude(r.back());
      if (lead < T(kIllConditioned) * max_abs(dividend)) return false;
    } else {
      trim(r);
      if (r.empty()) break;  // gcd reached: repeated roots
    }
    for (auto& c : r) c = -c;
    normalize(r);
    chain.push_back(std::move(r));
  }
  *count = count_from_chain(chain);
  return true;
}

}  // namespace

std::size_t sturm_count_exact(std::span<const double> coeffs) {
  std::vector<Rational> p(coeffs.begin(), coeffs.end());
  std::size_t count = 0;
  sturm_chain_count(std::move(p), false, &count);
  return count;
}

std::size_t sturm_count(std::span<const double> coeffs) {
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw DomainError("sturm_count: coefficients must be finite");
  }
  std::vector<double> p(coeffs.begin(), coeffs.end());
  std::size_t count = 0;
  if (sturm_chain_count(std::move(p), true, &count)) return count;
  return sturm_count_exact(coeffs);
}

std::vector<double> eigen_binary_form(const PolySystem& f) {
  if (f.n() != 2) throw DomainError("eigen_binary_form: system must have n = 2");
  const int d = f.d();
  std::vector<double> p(d + 2, 0.0);
  for (std::size_t m = 0; m < f.monomial_count(); ++m) {
    const int e2 = f.exponents()[m][1];
    p[e2 + 1] += f.coeff(0, m);
    p[e2] -= f.coeff(1, m);
  }
  return p;
}

std::size_t count_classes_n2(const PolySystem& f) {
  auto p = eigen_binary_form(f);
  const bool root_at_infinity = p.back() == 0.0;
  trim(p);
  if (p.empty()) {
    throw DegenerateInputError("count_classes_n2: the eigenvector form vanishes identically");
  }
  return sturm_count(p) + (root_at_infinity ? 1 : 0);
}

}  // namespace eigcount
