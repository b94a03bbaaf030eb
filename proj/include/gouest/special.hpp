#pragma once

// Complex special functions needed by the Laplace exponents and the
// theoretical Mellin transforms.

#include <complex>

namespace gouest {

using Complex = std::complex<double>;

namespace special {

/// Largest |Im z| for which erf/erfc/erfcx are declared accurate.
inline constexpr double kErfImagEnvelope = 30.0;

/// Error function on the complex plane.
///
/// Relative accuracy ~1e-13 for |Im z| <= 30; throws AccuracyError outside.
/// Values whose magnitude exceeds the double range come back as inf.
Complex erf(Complex z);

/// erfc(z) = 1 - erf(z), evaluated without cancellation for large Re z.
Complex erfc(Complex z);

/// Scaled complement erfcx(z) = exp(z^2) erfc(z).
Complex erfcx(Complex z);

/// Principal log-gamma via a Lanczos sum (g = 7, nine coefficients), with
/// the reflection formula for Re z < 1/2. Throws PoleError at z = 0, -1, ...
Complex log_gamma(Complex z);

double normal_pdf(double x);
double normal_cdf(double x);

/// Standard normal cdf continued to complex arguments, (erf(z/sqrt2)+1)/2.
Complex normal_cdf(Complex z);

}  // namespace special
}  // namespace gouest
