#pragma once

#include <cstddef>
#include <span>

#include "eigcount/tensor.hpp"

namespace eigcount {

/// Number of distinct real roots of sum_i coeffs[i] z^i, from the sign
/// variations of the Sturm chain at -inf and +inf. The chain runs in floating
/// point with per-step rescaling; if a remainder's leading coefficient falls
/// below 1e-10 of its dividend the count is redone in exact rational
/// arithmetic. Throws DegenerateInputError for the zero polynomial.
std::size_t sturm_count(std::span<const double> coeffs);

/// Same count, always in exact rational arithmetic.
std::size_t sturm_count_exact(std::span<const double> coeffs);

/// Coefficients (ascending) of f_1(1,z) z - f_2(1,z), the dehomogenized
/// binary form whose real projective roots are the real eigenvector
/// directions of a 2-variable system.
std::vector<double> eigen_binary_form(const PolySystem& f);

/// Real eigenpair classes of f with n = 2: real projective roots of
/// f_1(v) v_2 - f_2(v) v_1. Throws DegenerateInputError if that form vanishes
/// identically.
std::size_t count_classes_n2(const PolySystem& f);

}  // namespace eigcount
