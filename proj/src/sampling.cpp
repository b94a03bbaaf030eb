#include "gouest/sampling.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/random/beta_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <utility>

#include "gouest/errors.hpp"
#include "gouest/rng.hpp"

namespace gouest {

Sample::Sample(std::vector<double> values, double spacing, std::uint64_t seed)
    : values_(std::move(values)), spacing_(spacing), seed_(seed) {
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_)) {
    throw DomainError("sample spacing must be a positive finite number");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      std::ostringstream msg;
      msg << "observation " << i << " = " << values_[i]
          << " is not a positive finite number (Mellin transform needs X > 0)";
      throw DomainError(msg.str());
    }
  }
}

double Sample::mean() const noexcept {
  if (values_.empty()) return 0.0;
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(size());
}

double Sample::variance() const noexcept {
  if (values_.size() < 2) return 0.0;
  const double m = mean();
  double acc = 0.0;
  for (double x : values_) acc += (x - m) * (x - m);
  return acc / static_cast<double>(size() - 1);
}

void SeriesTruncationPolicy::validate() const {
  if (!(tolerance > 0.0 && tolerance < 1.0)) {
    throw ConfigError("series tolerance must lie in (0, 1)");
  }
  if (max_terms < 1) throw ConfigError("series max_terms must be >= 1");
}

namespace {

template <class Draw>
Sample draw_iid(std::size_t n, std::uint64_t seed, Draw&& draw) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(derive_seed(seed, i));
    out[i] = draw(rng);
  }
  return Sample(std::move(out), 1.0, seed);
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(name) + " must be a positive finite number");
  }
}

}  // namespace

Sample sample_gamma_case(std::size_t n, double a, double b, std::uint64_t seed) {
  require_positive(a, "a");
  if (!(b >= 0.0)) throw ConfigError("b must be >= 0");
  boost::random::gamma_distribution<double> gamma(b + 1.0, 1.0 / a);
  return draw_iid(n, seed, [&gamma](CounterRng& rng) {
    gamma.reset();
    return gamma(rng);
  });
}

Sample sample_beta_case(std::size_t n, double a, double b, double mu, std::uint64_t seed) {
  require_positive(a, "a");
  require_positive(mu, "mu");
  if (!(b >= 0.0)) throw ConfigError("b must be >= 0");
  boost::random::beta_distribution<double> beta(b + 1.0, a / mu);
  return draw_iid(n, seed, [&beta, mu](CounterRng& rng) {
    beta.reset();
    double x = beta(rng) / mu;
    // Beta draws may round to exactly 0 when a/mu is large; keep the sample in (0, 1/mu].
    if (x <= 0.0) x = std::numeric_limits<double>::min();
    return x;
  });
}

Sample sample_series_cp(std::size_t n, const TruncNormCpParams& params,
                        const SeriesTruncationPolicy& policy, std::uint64_t seed) {
  policy.validate();
  // Validates the parameters.
  (void)SubordinatorModel::trunc_norm_cp(params.lambda, params.q, params.alpha);

  const double log_q = std::log(params.q);
  const double tail_scale = 1.0 / (params.lambda * (1.0 - std::pow(params.q, params.alpha)));
  // Upper-tail mass of N(0,1) beyond alpha, times 2.
  const double erfc_alpha = std::erfc(params.alpha / std::numbers::sqrt2);

  return draw_iid(n, seed, [&](CounterRng& rng) {
    double partial = 0.0;
    double s = 0.0;  // S_k
    for (std::size_t k = 0; k < policy.max_terms; ++k) {
      const double gap = -std::log(rng.uniform_open()) / params.lambda;
      partial += std::exp(s * log_q) * gap;
      // eta ~ N(0,1) | eta > alpha by inversion of the upper tail.
      const double eta =
          std::numbers::sqrt2 * boost::math::erfc_inv(rng.uniform_open() * erfc_alpha);
      s += eta;
      if (std::exp(s * log_q) * tail_scale < policy.tolerance * partial) return partial;
    }
    std::ostringstream msg;
    msg << "series sampler reached max_terms = " << policy.max_terms
        << " before the tail bound fell below " << policy.tolerance;
    throw TruncationError(msg.str());
  });
}

Sample sample_model(const SubordinatorModel& model, std::size_t n, std::uint64_t seed,
                    const SeriesTruncationPolicy& policy) {
  if (model.is_cp_exp()) {
    const auto& p = model.cp_exp_params();
    if (p.mu > 0.0) return sample_beta_case(n, p.a, p.b, p.mu, seed);
    return sample_gamma_case(n, p.a, p.b, seed);
  }
  return sample_series_cp(n, model.trunc_norm_params(), policy, seed);
}

namespace {

// exp(-y) I_nu(y); large-argument expansion where the unscaled Bessel
// function would overflow.
double scaled_bessel_i(double nu, double y) {
  if (y < 500.0) return std::exp(-y) * boost::math::cyl_bessel_i(nu, y);
  const double m = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 8; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(m - odd * odd) / (k * 8.0 * y);
    sum += term;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * y);
}

double pi3_order(double a) { return std::sqrt(a + 0.25); }

void check_pi3_params(double a, double b) {
  if (!(a > -0.25) || !std::isfinite(a) || !std::isfinite(b) || !(b > -1.0)) {
    throw DomainError("density_pi3 requires a > -1/4 and b > -1");
  }
  if (pi3_order(a) <= b + 0.5) {
    std::ostringstream msg;
    msg << "density_pi3: not integrable at infinity for a = " << a << ", b = " << b
        << " (need sqrt(a + 1/4) > b + 1/2)";
    throw DomainError(msg.str());
  }
}

double pi3_normalizer(double a, double b) {
  static std::mutex mutex;
  static std::map<std::pair<double, double>, double> cache;
  const std::lock_guard lock(mutex);
  const auto key = std::make_pair(a, b);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  // Substitute y = 1/(2x): dx = dy / (2 y^2).
  const double nu = pi3_order(a);
  const auto integrand = [nu, b](double y) {
    // Below 1e-100 the integrand (~ y^{nu-b-3/2}) contributes nothing
    // representable, and 1/y^2 would overflow.
    if (y < 1e-100) return 0.0;
    return std::pow(2.0 * y, 0.5 - b) * scaled_bessel_i(nu, y) / (2.0 * y * y);
  };
  boost::math::quadrature::tanh_sinh<double> inner;
  boost::math::quadrature::exp_sinh<double> outer;
  const double mass = inner.integrate(integrand, 0.0, 1.0, 1e-13) +
                      outer.integrate(integrand, 1.0, std::numeric_limits<double>::infinity(), 1e-13);
  const double c = 1.0 / mass;
  cache.emplace(key, c);
  return c;
}

}  // namespace

double density_pi3_unnormalized(double x, double a, double b) {
  if (!(x > 0.0)) throw DomainError("density_pi3 requires x > 0");
  check_pi3_params(a, b);
  const double y = 0.5 / x;
  return std::pow(x, b - 0.5) * scaled_bessel_i(pi3_order(a), y);
}

double density_pi3(double x, double a, double b) {
  const double unnormalized = density_pi3_unnormalized(x, a, b);
  return pi3_normalizer(a, b) * unnormalized;
}

}  // namespace gouest
