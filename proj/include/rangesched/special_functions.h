#pragma once

namespace rangesched {

// Error function and its complement, W. J. Cody's rational Chebyshev
// approximations (double precision, ~1e-16 relative).
double erf(double x);
double erfc(double x);

/// Inverse of erfc on [0, 2].
///
/// Solved by safeguarded Newton iteration inside a sign-change bracket.
/// Near x = 1 the equation is rewritten as erf(y) = 1 - x, which is exact
/// in floating point there, so tiny results keep full relative accuracy.
/// Returns +inf at 0 and -inf at 2; throws InvalidInput outside [0, 2].
double erfc_inv(double x);

} // namespace rangesched
