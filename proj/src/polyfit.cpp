#include "rangesched/polyfit.h"

#include <Eigen/Dense>
#include <algorithm>
#include <sstream>

#include "rangesched/error.h"

namespace rangesched {

ComplexityFit fit_polynomial(std::span<const double> x, std::span<const double> y,
                             std::size_t degree) {
  if (x.size() != y.size()) {
    throw InvalidInput("polynomial fit: x and y differ in length");
  }
  if (x.size() <= degree) {
    std::ostringstream msg;
    msg << "polynomial fit of degree " << degree << " needs more than " << degree
        << " points, got " << x.size();
    throw InvalidInput(msg.str());
  }
  const auto m = static_cast<Eigen::Index>(x.size());
  const auto cols = static_cast<Eigen::Index>(degree + 1);
  // Work on t = (x - centre) / half_width in [-1, 1] to keep the
  // Vandermonde matrix well conditioned.
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double centre = 0.5 * (*lo_it + *hi_it);
  const double half = *hi_it > *lo_it ? 0.5 * (*hi_it - *lo_it) : 1.0;
  Eigen::MatrixXd v(m, cols);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const double t = (x[static_cast<std::size_t>(r)] - centre) / half;
    double pw = 1.0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      v(r, c) = pw;
      pw *= t;
    }
    rhs(r) = y[static_cast<std::size_t>(r)];
  }
  const Eigen::VectorXd a = v.colPivHouseholderQr().solve(rhs);
  ComplexityFit fit;
  fit.degree = degree;
  fit.residual_sq = (v * a - rhs).squaredNorm();
  // Expand sum a_c ((x - centre) / half)^c into powers of x.
  fit.coefficients.assign(degree + 1, 0.0);
  for (std::size_t c = 0; c <= degree; ++c) {
    const double scale = a(static_cast<Eigen::Index>(c)) / std::pow(half, static_cast<double>(c));
    double binom = 1.0;
    for (std::size_t k = 0; k <= c; ++k) {
      // term: binom(c, k) x^k (-centre)^(c-k)
      fit.coefficients[k] += scale * binom * std::pow(-centre, static_cast<double>(c - k));
      binom = binom * static_cast<double>(c - k) / static_cast<double>(k + 1);
    }
  }
  return fit;
}

std::vector<ComplexityFit> fit_degrees(std::span<const double> x, std::span<const double> y,
                                       std::size_t max_degree) {
  std::vector<ComplexityFit> fits;
  for (std::size_t deg = 1; deg <= max_degree; ++deg) {
    fits.push_back(fit_polynomial(x, y, deg));
  }
  return fits;
}

double evaluate_polynomial(std::span<const double> coefficients, double x) {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

} // namespace rangesched
