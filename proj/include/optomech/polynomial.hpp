#pragma once

#include <span>
#include <vector>

#include "optomech/model.hpp"

namespace optomech {

/// Horner evaluation; coefficients ordered from the highest power down.
[[nodiscard]] Complex evaluate_polynomial(std::span<const double> coeffs, Complex x);
[[nodiscard]] double evaluate_polynomial(std::span<const double> coeffs, double x);

/// All complex roots via the eigenvalues of the (rescaled) companion matrix,
/// each polished by Newton steps on the original coefficients. Leading
/// coefficient must be nonzero.
[[nodiscard]] std::vector<Complex> polynomial_roots(std::span<const double> coeffs);

/// Imaginary part below this fraction of (1 + |Re|) counts as real.
inline constexpr double kRealRootTolerance = 1e-8;

/// Real roots in ascending order. Roots closer than merge_tolerance * max(1,|z|)
/// are reported once.
[[nodiscard]] std::vector<double> real_polynomial_roots(std::span<const double> coeffs,
                                                        double merge_tolerance = 1e-9);

}  // namespace optomech
