#pragma once

// Empirical and closed-form Mellin transforms M(z) = E[A^{z-1}] and the
// Laplace-exponent estimator Y_n(z) = z M_n(z) / M_n(z+1), which rests on
// the recursion M(z) = (phi(z)/z) M(z+1).

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "gouest/sampling.hpp"
#include "gouest/special.hpp"

namespace gouest {

struct MellinValue {
  Complex z;
  Complex value;
  std::size_t n = 0;
};

/// M_n(z) = (1/n) sum_k exp((z-1) log X_k), compensated summation.
MellinValue empirical_mellin(const Sample& sample, Complex z);

struct LaplacePoint {
  Complex value;           // Y_n(z)
  double denom_abs = 0.0;  // |M_n(z+1)|
  bool ill_conditioned = false;
};

/// Y_n(z) with the point flagged when |M_n(z+1)| < floor. Never throws on
/// ill-conditioning; throws DomainError if floor <= 0.
LaplacePoint laplace_estimate(const Sample& sample, Complex z, double floor);

/// Closed-form Mellin transform of Beta(b+1, a/mu)/mu:
/// Gamma(al+be)/Gamma(al) mu^{1-z} Gamma(z+al-1)/Gamma(z+al+be-1), al = b+1, be = a/mu.
/// Requires Re z > -b; PoleError at the poles of Gamma(z+b).
Complex mellin_theoretical_beta(Complex z, double a, double b, double mu);

/// Closed-form Mellin transform of Gamma(shape b+1, rate a):
/// Gamma(b+z) / (Gamma(b+1) a^{z-1}).
Complex mellin_theoretical_gamma(Complex z, double a, double b);

/// Y_n on the vertical line u0 + i v, v over a grid.
struct LaplaceCurve {
  double u0 = 1.0;
  std::vector<double> v;
  std::vector<Complex> values;     // Y_n(u0 + i v)
  std::vector<double> denom_abs;   // |M_n(u0 + 1 + i v)|
  std::vector<bool> ill_conditioned;

  std::size_t size() const noexcept { return v.size(); }
  std::size_t ill_count() const noexcept;
};

/// Default ill-conditioning floor: 10/sqrt(n) times the RMS of |X^{u0}|,
/// which is the sampling-noise scale of M_n(u0 + 1 + i v).
double default_floor(const Sample& sample, double u0);

/// Y_n at every grid point from a single pass over the sample. A sample
/// with zero variance carries no information on phi; every point is then
/// flagged. floor defaults to default_floor(sample, u0).
LaplaceCurve laplace_curve(const Sample& sample, double u0, std::span<const double> v,
                           std::optional<double> floor = std::nullopt);

/// Plug-in curve z M(z) / M(z+1) from an arbitrary Mellin transform
/// (e.g. the closed forms above). Points with |M(z+1)| < floor are flagged.
LaplaceCurve laplace_curve_from_mellin(const std::function<Complex(Complex)>& mellin, double u0,
                                       std::span<const double> v, double floor = 0.0);

/// CSV: v,re_Y,im_Y,abs_Y,denom_abs,ill_flag
void write_csv(const LaplaceCurve& curve, std::ostream& out);

}  // namespace gouest
