#include "eigcount/series.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace eigcount {
namespace {

template <class T>
std::vector<double> generating_coefficients_in(int d, int order) {
  using std::sqrt;
  using boost::multiprecision::sqrt;
  // One extra order for the leading factor z.
  const std::size_t inner = static_cast<std::size_t>(order);
  const T root_d = sqrt(T(d));

  const BasicSeries<T> radicand(inner, {T(d) + T(1), T(-2) * root_d});
  const BasicSeries<T> one_minus_root_d_z(inner, {T(1), -root_d});
  const BasicSeries<T> one_minus_z2(inner, {T(1), T(0), T(-1)});
  const BasicSeries<T> z(inner, {T(0), T(1)});

  const auto numerator = one_minus_root_d_z + series_mul(z, series_sqrt(radicand));
  const auto g = series_div(numerator, series_mul(one_minus_z2, one_minus_root_d_z));

  std::vector<double> out(inner + 1, 0.0);
  for (std::size_t k = 0; k < inner; ++k) out[k + 1] = static_cast<double>(g[k]);
  return out;
}

}  // namespace

std::vector<double> generating_coefficients(int d, int order) {
  if (d < 1) throw DomainError("generating_coefficients: d must be positive");
  if (order < 1) throw DomainError("generating_coefficients: order must be positive");
  if (d > 50 && order > 30) {
    return generating_coefficients_in<boost::multiprecision::cpp_bin_float_quad>(d, order);
  }
  return generating_coefficients_in<double>(d, order);
}

}  // namespace eigcount
