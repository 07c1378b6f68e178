#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rangesched {

/// Least-squares polynomial y ~ sum_i coefficients[i] * x^i.
struct ComplexityFit {
  std::size_t degree = 0;
  std::vector<double> coefficients;
  double residual_sq = 0.0; // squared L2 norm of the residual vector
};

// Throws InvalidInput unless x.size() == y.size() > degree.
ComplexityFit fit_polynomial(std::span<const double> x, std::span<const double> y,
                             std::size_t degree);

// Fits of degree 1..max_degree.
std::vector<ComplexityFit> fit_degrees(std::span<const double> x, std::span<const double> y,
                                       std::size_t max_degree);

double evaluate_polynomial(std::span<const double> coefficients, double x);

} // namespace rangesched
