#include "gouest/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gouest/detail/parallel.hpp"
#include "gouest/errors.hpp"

namespace gouest {
namespace {

bool same_grid_point(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

void check_grid(const LaplaceCurve& curve, std::span<const double> alphas, double vn) {
  if (curve.size() != alphas.size() || curve.values.size() != alphas.size()) {
    std::ostringstream msg;
    msg << "curve has " << curve.size() << " points, grid expects " << alphas.size();
    throw GridMismatch(msg.str());
  }
  for (std::size_t m = 0; m < alphas.size(); ++m) {
    if (!same_grid_point(curve.v[m], alphas[m] * vn)) {
      std::ostringstream msg;
      msg << "curve point " << m << " at v = " << curve.v[m] << ", expected alpha_m V_n = "
          << alphas[m] * vn;
      throw GridMismatch(msg.str());
    }
  }
}

std::vector<double> weights_for(const EstimationConfig& config, std::span<const double> alphas) {
  std::vector<double> w;
  w.reserve(alphas.size());
  for (double a : alphas) w.push_back(weight(config.weight_spec(), a));
  return w;
}

}  // namespace

void EstimationConfig::validate() const {
  const auto fail = [](const std::string& what) { throw ConfigError("estimation config: " + what); };
  if (!(u0 > 0.0) || !std::isfinite(u0)) fail("u0 must be > 0");
  if (!(vn > 0.0) || !std::isfinite(vn)) fail("V_n must be > 0");
  if (!(eps > 0.0 && eps < 1.0)) fail("eps must lie in (0, 1)");
  if (grid_m < 2) fail("grid M must be >= 2");
  if (density_grid_m < 2) fail("density grid M must be >= 2");
  if (floor && !(*floor >= 0.0)) fail("floor must be >= 0");
  if (kernel.plateau != 0.05 || kernel.support != 1.0) {
    fail("flat-top kernel has plateau 0.05 and support 1");
  }
}

nlohmann::json to_json(const EstimationConfig& config) {
  nlohmann::json j{{"u0", config.u0},
                   {"vn", config.vn},
                   {"eps", config.eps},
                   {"grid_m", config.grid_m},
                   {"density_grid_m", config.density_grid_m},
                   {"weight", to_string(config.weight)},
                   {"kernel", to_string(config.kernel.kind)},
                   {"positive_part", config.positive_part}};
  j["floor"] = config.floor ? nlohmann::json(*config.floor) : nlohmann::json("default");
  return j;
}

std::vector<double> mu_lambda_alphas(double eps, std::size_t m) {
  std::vector<double> out;
  out.reserve(m);
  for (std::size_t j = 1; j <= m; ++j) {
    out.push_back(eps + static_cast<double>(j) * (1.0 - eps) / static_cast<double>(m));
  }
  return out;
}

std::vector<double> density_alphas(std::size_t m) {
  std::vector<double> out;
  out.reserve(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    out.push_back(-1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(m));
  }
  return out;
}

std::vector<double> scale(std::span<const double> alphas, double factor) {
  std::vector<double> out;
  out.reserve(alphas.size());
  for (double a : alphas) out.push_back(a * factor);
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {lo};
  out.reserve(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i + 1 < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  out.push_back(hi);
  return out;
}

nlohmann::json to_json(const TripletEstimate& estimate) {
  return {{"mu_hat", estimate.mu_hat},
          {"lambda_hat", estimate.lambda_hat},
          {"u0", estimate.curve.u0},
          {"vn", estimate.vn},
          {"grid_points", estimate.curve.size()},
          {"ill_conditioned", estimate.ill_conditioned}};
}

double estimate_mu_weighted(const LaplaceCurve& curve, std::span<const double> alphas,
                            std::span<const double> weights, double vn) {
  check_grid(curve, alphas, vn);
  if (weights.size() != alphas.size()) throw GridMismatch("one weight per grid point required");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t m = 0; m < alphas.size(); ++m) {
    num += weights[m] * alphas[m] * curve.values[m].imag();
    den += weights[m] * alphas[m] * alphas[m];
  }
  if (den == 0.0) throw DegenerateWeights("sum of w(alpha) alpha^2 is zero");
  return num / (vn * den);
}

double estimate_lambda_weighted(const LaplaceCurve& curve, std::span<const double> alphas,
                                std::span<const double> weights, double vn, double mu_hat) {
  check_grid(curve, alphas, vn);
  if (weights.size() != alphas.size()) throw GridMismatch("one weight per grid point required");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t m = 0; m < alphas.size(); ++m) {
    num += weights[m] * curve.values[m].real();
    den += weights[m];
  }
  if (den == 0.0) throw DegenerateWeights("sum of w(alpha) is zero");
  return num / den - mu_hat * curve.u0;
}

double estimate_mu(const LaplaceCurve& curve, const EstimationConfig& config) {
  const auto alphas = mu_lambda_alphas(config.eps, config.grid_m);
  return estimate_mu_weighted(curve, alphas, weights_for(config, alphas), config.vn);
}

double estimate_lambda(const LaplaceCurve& curve, double mu_hat, const EstimationConfig& config) {
  const auto alphas = mu_lambda_alphas(config.eps, config.grid_m);
  return estimate_lambda_weighted(curve, alphas, weights_for(config, alphas), config.vn, mu_hat);
}

Complex estimate_fourier_nu_bar(const LaplaceCurve& curve, double mu_hat, double lambda_hat,
                                double v) {
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (same_grid_point(curve.v[i], v)) {
      return -curve.values[i] + mu_hat * Complex(curve.u0, curve.v[i]) + lambda_hat;
    }
  }
  std::ostringstream msg;
  msg << "v = " << v << " is not a point of the Laplace curve grid";
  throw GridMismatch(msg.str());
}

std::vector<Complex> estimate_fourier_nu_bar(const LaplaceCurve& curve, double mu_hat,
                                             double lambda_hat) {
  std::vector<Complex> out;
  out.reserve(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out.push_back(-curve.values[i] + mu_hat * Complex(curve.u0, curve.v[i]) + lambda_hat);
  }
  return out;
}

LevyDensityEstimate invert_levy_density(std::span<const Complex> fhat,
                                        const EstimationConfig& config,
                                        std::span<const double> x_grid) {
  config.validate();
  const std::size_t m = config.density_grid_m;
  if (fhat.size() != m + 1) {
    std::ostringstream msg;
    msg << "Fourier estimate has " << fhat.size() << " points, symmetric grid with M = " << m
        << " has " << m + 1;
    throw GridMismatch(msg.str());
  }
  const auto alphas = density_alphas(m);
  std::vector<double> v(alphas.size());
  std::vector<Complex> weighted(alphas.size());
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    v[j] = alphas[j] * config.vn;
    weighted[j] = fhat[j] * kernel(config.kernel, alphas[j]);
  }
  const double dv = 2.0 * config.vn / static_cast<double>(m);
  const double prefactor = dv / (2.0 * std::numbers::pi);

  LevyDensityEstimate out;
  out.x.assign(x_grid.begin(), x_grid.end());
  out.nu_hat.resize(x_grid.size());
  out.nu_bar_hat.resize(x_grid.size());
  out.imag_residual.resize(x_grid.size());
  out.u0 = config.u0;
  out.vn = config.vn;
  out.grid_m = m;

  detail::parallel_for(x_grid.size(), [&](std::size_t i) {
    const double x = x_grid[i];
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      acc += Complex(std::cos(v[j] * x), std::sin(v[j] * x)) * weighted[j];
    }
    const Complex nu_bar = prefactor * acc;
    const double lift = std::exp(config.u0 * x);
    double re = lift * nu_bar.real();
    if (config.positive_part) re = std::max(0.0, re);
    out.nu_hat[i] = re;
    out.nu_bar_hat[i] = config.positive_part ? std::max(0.0, nu_bar.real()) : nu_bar.real();
    out.imag_residual[i] = lift * nu_bar.imag();
  });
  return out;
}

TripletEstimate run_algorithm1(const Sample& sample, const EstimationConfig& config) {
  config.validate();
  const auto alphas = mu_lambda_alphas(config.eps, config.grid_m);
  const auto v = scale(alphas, config.vn);
  TripletEstimate out;
  out.curve = laplace_curve(sample, config.u0, v, config.floor);
  out.vn = config.vn;
  out.mu_hat = estimate_mu(out.curve, config);
  out.lambda_hat = estimate_lambda(out.curve, out.mu_hat, config);
  out.ill_conditioned = out.curve.ill_count();
  return out;
}

Algorithm2Result run_algorithm2_full(const Sample& sample, const EstimationConfig& config,
                                     std::span<const double> x_grid) {
  Algorithm2Result out;
  out.triplet = run_algorithm1(sample, config);
  const auto v = scale(density_alphas(config.density_grid_m), config.vn);
  out.curve = laplace_curve(sample, config.u0, v, config.floor);
  out.fourier = estimate_fourier_nu_bar(out.curve, out.triplet.mu_hat, out.triplet.lambda_hat);
  out.density = invert_levy_density(out.fourier, config, x_grid);
  return out;
}

LevyDensityEstimate run_algorithm2(const Sample& sample, const EstimationConfig& config,
                                   std::span<const double> x_grid) {
  return run_algorithm2_full(sample, config, x_grid).density;
}

void write_csv(const LevyDensityEstimate& estimate, std::ostream& out) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "x,nu_hat,nu_bar_hat,imag_residual\n";
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    buf << estimate.x[i] << ',' << estimate.nu_hat[i] << ',' << estimate.nu_bar_hat[i] << ','
        << estimate.imag_residual[i] << '\n';
  }
  out << buf.str();
}

}  // namespace gouest
