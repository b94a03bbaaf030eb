#include "gouest/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "gouest/detail/parallel.hpp"
#include "gouest/errors.hpp"

namespace gouest {
namespace {

// Kahan summation on both components.
class CompensatedSum {
 public:
  void add(double re, double im) noexcept {
    add_one(re, sum_re_, comp_re_);
    add_one(im, sum_im_, comp_im_);
  }
  Complex value() const noexcept { return {sum_re_, sum_im_}; }

 private:
  static void add_one(double x, double& sum, double& comp) noexcept {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double sum_re_ = 0.0, comp_re_ = 0.0, sum_im_ = 0.0, comp_im_ = 0.0;
};

void check_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(std::string(what) + ": non-finite argument");
  }
}

// Per-observation quantities shared by every grid point on the line Re z = u0.
struct LinePowers {
  std::vector<double> log_x;
  std::vector<double> pow_lo;  // X^{u0-1}
  std::vector<double> pow_hi;  // X^{u0}
};

LinePowers line_powers(const Sample& sample, double u0) {
  LinePowers p;
  const auto xs = sample.values();
  p.log_x.reserve(xs.size());
  p.pow_lo.reserve(xs.size());
  p.pow_hi.reserve(xs.size());
  for (double x : xs) {
    const double lx = std::log(x);
    p.log_x.push_back(lx);
    p.pow_lo.push_back(std::exp((u0 - 1.0) * lx));
    p.pow_hi.push_back(std::exp(u0 * lx));
  }
  return p;
}

// (M_n(u0 + i v), M_n(u0 + 1 + i v)) in one pass.
std::pair<Complex, Complex> mellin_pair(const LinePowers& p, double v) {
  CompensatedSum lo;
  CompensatedSum hi;
  const std::size_t n = p.log_x.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = v * p.log_x[k];
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    lo.add(p.pow_lo[k] * c, p.pow_lo[k] * s);
    hi.add(p.pow_hi[k] * c, p.pow_hi[k] * s);
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  return {lo.value() * inv_n, hi.value() * inv_n};
}

}  // namespace

MellinValue empirical_mellin(const Sample& sample, Complex z) {
  check_finite(z, "empirical_mellin");
  if (sample.size() == 0) throw DomainError("empirical_mellin: empty sample");
  CompensatedSum acc;
  const Complex w = z - 1.0;
  for (double x : sample.values()) {
    const Complex term = std::exp(w * std::log(x));
    acc.add(term.real(), term.imag());
  }
  return {z, acc.value() / static_cast<double>(sample.size()), sample.size()};
}

LaplacePoint laplace_estimate(const Sample& sample, Complex z, double floor) {
  if (!(floor > 0.0)) throw DomainError("laplace_estimate: floor must be positive");
  const Complex num = empirical_mellin(sample, z).value;
  const Complex den = empirical_mellin(sample, z + 1.0).value;
  LaplacePoint out;
  out.denom_abs = std::abs(den);
  out.value = (z == Complex(0.0, 0.0)) ? Complex(0.0, 0.0) : z * num / den;
  out.ill_conditioned = out.denom_abs < floor;
  return out;
}

Complex mellin_theoretical_beta(Complex z, double a, double b, double mu) {
  check_finite(z, "mellin_theoretical_beta");
  if (!(a > 0.0 && b > -1.0 && mu > 0.0)) {
    throw DomainError("mellin_theoretical_beta requires a > 0, b > -1, mu > 0");
  }
  const double al = b + 1.0;
  const double be = a / mu;
  if (z.imag() == 0.0 && z.real() <= -b && std::floor(z.real() + b) == z.real() + b) {
    throw PoleError("mellin_theoretical_beta: pole of Gamma(z + b)");
  }
  if (z.real() <= -b) throw DomainError("mellin_theoretical_beta requires Re z > -b");
  const Complex log_m = std::lgamma(al + be) - std::lgamma(al) + (1.0 - z) * std::log(mu) +
                        special::log_gamma(z + al - 1.0) - special::log_gamma(z + al + be - 1.0);
  return std::exp(log_m);
}

Complex mellin_theoretical_gamma(Complex z, double a, double b) {
  check_finite(z, "mellin_theoretical_gamma");
  if (!(a > 0.0 && b > -1.0)) throw DomainError("mellin_theoretical_gamma requires a > 0, b > -1");
  if (z.imag() == 0.0 && z.real() <= -b && std::floor(z.real() + b) == z.real() + b) {
    throw PoleError("mellin_theoretical_gamma: pole of Gamma(z + b)");
  }
  if (z.real() <= -b) throw DomainError("mellin_theoretical_gamma requires Re z > -b");
  const Complex log_m =
      special::log_gamma(z + b) - std::lgamma(b + 1.0) - (z - 1.0) * std::log(a);
  return std::exp(log_m);
}

std::size_t LaplaceCurve::ill_count() const noexcept {
  return static_cast<std::size_t>(std::count(ill_conditioned.begin(), ill_conditioned.end(), true));
}

double default_floor(const Sample& sample, double u0) {
  if (sample.size() == 0) throw DomainError("default_floor: empty sample");
  CompensatedSum acc;
  for (double x : sample.values()) acc.add(std::exp(2.0 * u0 * std::log(x)), 0.0);
  const double n = static_cast<double>(sample.size());
  const double rms = std::sqrt(acc.value().real() / n);
  return 10.0 / std::sqrt(n) * rms;
}

LaplaceCurve laplace_curve(const Sample& sample, double u0, std::span<const double> v,
                           std::optional<double> floor) {
  if (!(u0 > 0.0) || !std::isfinite(u0)) throw DomainError("laplace_curve requires u0 > 0");
  if (sample.size() == 0) throw DomainError("laplace_curve: empty sample");
  const double thresh = floor.value_or(default_floor(sample, u0));
  if (!(thresh >= 0.0)) throw DomainError("laplace_curve: floor must be nonnegative");
  const auto [lo, hi] = std::minmax_element(sample.values().begin(), sample.values().end());
  const bool degenerate = *lo == *hi;

  const LinePowers powers = line_powers(sample, u0);
  LaplaceCurve curve;
  curve.u0 = u0;
  curve.v.assign(v.begin(), v.end());
  curve.values.resize(v.size());
  curve.denom_abs.resize(v.size());
  curve.ill_conditioned.resize(v.size());
  std::vector<char> flags(v.size());

  detail::parallel_for(v.size(), [&](std::size_t i) {
    const auto [lo, hi] = mellin_pair(powers, v[i]);
    const Complex z(u0, v[i]);
    curve.values[i] = z * lo / hi;
    curve.denom_abs[i] = std::abs(hi);
    flags[i] = degenerate || curve.denom_abs[i] < thresh;
  });
  for (std::size_t i = 0; i < v.size(); ++i) curve.ill_conditioned[i] = flags[i] != 0;
  return curve;
}

LaplaceCurve laplace_curve_from_mellin(const std::function<Complex(Complex)>& mellin, double u0,
                                       std::span<const double> v, double floor) {
  LaplaceCurve curve;
  curve.u0 = u0;
  curve.v.assign(v.begin(), v.end());
  for (double vi : v) {
    const Complex z(u0, vi);
    const Complex hi = mellin(z + 1.0);
    curve.values.push_back(z * mellin(z) / hi);
    curve.denom_abs.push_back(std::abs(hi));
    curve.ill_conditioned.push_back(std::abs(hi) < floor);
  }
  return curve;
}

void write_csv(const LaplaceCurve& curve, std::ostream& out) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "v,re_Y,im_Y,abs_Y,denom_abs,ill_flag\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Complex y = curve.values[i];
    buf << curve.v[i] << ',' << y.real() << ',' << y.imag() << ',' << std::abs(y) << ','
        << curve.denom_abs[i] << ',' << (curve.ill_conditioned[i] ? 1 : 0) << '\n';
  }
  out << buf.str();
}

}  // namespace gouest
