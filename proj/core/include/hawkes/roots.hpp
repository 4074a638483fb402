#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hawkes {

/// Multiplies two polynomials given by ascending coefficients.
std::vector<double> poly_multiply(std::span<const double> a, std::span<const double> b);

/// All roots of a polynomial (ascending coefficients, nonzero leading term)
/// from the eigenvalues of its balanced companion matrix.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coefficients);

}  // namespace hawkes
