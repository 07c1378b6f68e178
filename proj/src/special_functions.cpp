#include "rangesched/special_functions.h"

#include <cmath>
#include <limits>

#include "rangesched/error.h"

namespace rangesched {

namespace {

constexpr double kThresh = 0.46875;
constexpr double kXSmall = 1.11e-16;
constexpr double kXBig = 26.543;
constexpr double kSqrtPiInv = 0.56418958354775628695;

constexpr double kA[5] = {3.16112374387056560e00, 1.13864154151050156e02,
                          3.77485237685302021e02, 3.20937758913846947e03,
                          1.85777706184603153e-1};
constexpr double kB[4] = {2.36012909523441209e01, 2.44024637934444173e02,
                          1.28261652607737228e03, 2.84423683343917062e03};
constexpr double kC[9] = {5.64188496988670089e-1, 8.88314979438837594e00,
                          6.61191906371416295e01, 2.98635138197400131e02,
                          8.81952221241769090e02, 1.71204761263407058e03,
                          2.05107837782607147e03, 1.23033935479799725e03,
                          2.15311535474403846e-8};
constexpr double kD[8] = {1.57449261107098347e01, 1.17693950891312499e02,
                          5.37181101862009858e02, 1.62138957456669019e03,
                          3.29079923573345963e03, 4.36261909014324716e03,
                          3.43936767414372164e03, 1.23033935480374942e03};
constexpr double kP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                          1.25781726111229246e-1, 1.60837851487422766e-2,
                          6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kQ[5] = {2.56852019228982242e00, 1.87295284992346047e00,
                          5.27905102951428412e-1, 6.05183413124413191e-2,
                          2.33520497626869185e-3};

// erf(x) for |x| <= kThresh.
double erf_small(double x) {
  const double y = std::abs(x);
  const double ysq = y > kXSmall ? y * y : 0.0;
  double num = kA[4] * ysq;
  double den = ysq;
  for (int i = 0; i < 3; ++i) {
    num = (num + kA[i]) * ysq;
    den = (den + kB[i]) * ysq;
  }
  return x * (num + kA[3]) / (den + kB[3]);
}

// exp(-y*y) split so that the rounding of y*y does not leak into the result.
double exp_neg_sq(double y) {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

// erfc(y) for y > kThresh.
double erfc_large(double y) {
  if (y <= 4.0) {
    double num = kC[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + kC[i]) * y;
      den = (den + kD[i]) * y;
    }
    return exp_neg_sq(y) * (num + kC[7]) / (den + kD[7]);
  }
  if (y >= kXBig) {
    return 0.0;
  }
  const double ysq = 1.0 / (y * y);
  double num = kP[5] * ysq;
  double den = ysq;
  for (int i = 0; i < 4; ++i) {
    num = (num + kP[i]) * ysq;
    den = (den + kQ[i]) * ysq;
  }
  const double r = (kSqrtPiInv - ysq * (num + kP[4]) / (den + kQ[4])) / y;
  return exp_neg_sq(y) * r;
}

} // namespace

double erf(double x) {
  if (std::isnan(x)) {
    return x;
  }
  const double y = std::abs(x);
  if (y <= kThresh) {
    return erf_small(x);
  }
  const double r = 1.0 - erfc_large(y);
  return x < 0.0 ? -r : r;
}

double erfc(double x) {
  if (std::isnan(x)) {
    return x;
  }
  const double y = std::abs(x);
  if (y <= kThresh) {
    return 1.0 - erf_small(x);
  }
  const double r = erfc_large(y);
  return x < 0.0 ? 2.0 - r : r;
}

namespace {

// Solves f(y) = 0 for increasing or decreasing f with a sign change on
// [lo, hi]; `deriv` is f'.
template <typename F, typename Df>
double bracketed_newton(F f, Df deriv, double lo, double hi, double y) {
  double f_lo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double fy = f(y);
    if (fy == 0.0) {
      return y;
    }
    if ((fy < 0.0) == (f_lo < 0.0)) {
      lo = y;
      f_lo = fy;
    } else {
      hi = y;
    }
    const double slope = deriv(y);
    double next = y - fy / slope;
    if (!(next > std::min(lo, hi) && next < std::max(lo, hi)) || !std::isfinite(next)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - y) <= 4e-16 * std::abs(next) || next == y) {
      return next;
    }
    y = next;
  }
  return y;
}

double erfc_inv_upper(double x) {
  // x in (0, 0.5]: root is positive, erfc decreasing.
  const auto f = [x](double y) { return erfc(y) - x; };
  const auto df = [](double y) { return -2.0 * kSqrtPiInv * std::exp(-y * y); };
  // Tail asymptotics as the starting point.
  const double t = std::sqrt(-std::log(x));
  return bracketed_newton(f, df, 0.0, kXBig, std::max(0.5, t - 0.5 * std::log(t) / t));
}

} // namespace

double erfc_inv(double x) {
  if (!(x >= 0.0 && x <= 2.0)) {
    throw InvalidInput("erfc_inv argument must lie in [0, 2]");
  }
  if (x == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  if (x == 2.0) {
    return -std::numeric_limits<double>::infinity();
  }
  if (x > 1.5) {
    return -erfc_inv_upper(2.0 - x);
  }
  if (x < 0.5) {
    return erfc_inv_upper(x);
  }
  // erf(y) = t with t = 1 - x computed exactly.
  const double t = 1.0 - x;
  if (t == 0.0) {
    return 0.0;
  }
  const auto f = [t](double y) { return erf(y) - t; };
  const auto df = [](double y) { return 2.0 * kSqrtPiInv * std::exp(-y * y); };
  return bracketed_newton(f, df, -1.0, 1.0, t / (2.0 * kSqrtPiInv));
}

} // namespace rangesched
