#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string_view>

// Closed-form expectations of the number of real eigenpair classes of a
// gaussian tensor in (R^n)^{(d+1)}.

namespace eigcount {

/// Ambient dimension n and degree d; the tensor has order d + 1.
class ProblemShape {
 public:
  ProblemShape(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }

  friend bool operator==(const ProblemShape&, const ProblemShape&) = default;

 private:
  int n_;
  int d_;
};

enum class Route { hypergeom, finite_sum, quadrature, generating_function };

std::string_view to_string(Route route);
Route route_from_string(std::string_view name);

struct ExpectationValue {
  double value = 0.0;
  Route route = Route::finite_sum;
  ProblemShape shape{1, 1};
};

/// Generic number of complex eigenpair classes, sum_{i<n} d^i.
/// Throws OverflowError past 64 bits; see dnd_exact.
std::uint64_t dnd(const ProblemShape& shape);
boost::multiprecision::cpp_int dnd_exact(const ProblemShape& shape);
/// D(n,d) rounded to double (via the exact integer).
double dnd_real(const ProblemShape& shape);

/// Evaluates E_{n,d} through the two a = 1 hypergeometric terms.
ExpectationValue expected_count_hypergeom(const ProblemShape& shape);

/// Evaluates E_{n,d} through the even/odd binomial-sum formulas. Throws
/// PrecisionError if the cancellation control cannot deliver ~1e-10.
ExpectationValue expected_count_sum(const ProblemShape& shape);

/// E_{n,d} / sqrt(D(n,d)). Tends to sqrt(2/pi) (d = 1) or 1 (d > 1) as
/// n grows, and to 1 as d grows for fixed n > 1.
double normalized_ratio(const ProblemShape& shape);

/// Number of Z-eigenvalues belonging to `classes` real eigenpair classes:
/// classes for odd d, 2 classes for even d, one fewer when 0 is an eigenvalue.
std::uint64_t z_count_from_class_count(std::uint64_t classes, int d, bool zero_is_eigenvalue);

}  // namespace eigcount
