#include "gouest/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gouest/errors.hpp"
#include "gouest/rng.hpp"
#include "gouest/sampling.hpp"

namespace gouest {

double choose_vn_polynomial(double n, double beta, int s) {
  const double denom = 2.0 * beta + 2.0 * s + 3.0;
  if (!(denom > 0.0)) throw DomainError("choose_vn_polynomial: 2 beta + 2 s + 3 must be > 0");
  if (!(n >= 1.0)) throw DomainError("choose_vn_polynomial: n must be >= 1");
  return std::pow(n, 1.0 / denom);
}

double choose_vn_exponential(double n, double alpha, int s) {
  if (!(n >= 3.0)) throw DomainError("choose_vn_exponential: n must be >= 3");
  if (!(alpha > 0.0)) throw DomainError("choose_vn_exponential: alpha must be > 0");
  const double log_n = std::log(n);
  const double vn = log_n / (2.0 * alpha) - (s + 2.0) / alpha * std::log(log_n);
  if (!(vn > 0.0)) {
    std::ostringstream msg;
    msg << "choose_vn_exponential: V_n = " << vn << " is not positive for n = " << n
        << ", alpha = " << alpha << ", s = " << s;
    throw DomainError(msg.str());
  }
  return vn;
}

double mise(const LevyDensityEstimate& estimate, const std::function<double(double)>& nu_bar,
            double x_min, double x_max) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || x_max < x_min) {
    throw DomainError("mise: x-range must be finite and ordered");
  }
  double total = 0.0;
  bool have_prev = false;
  double prev_x = 0.0;
  double prev_e = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    const double x = estimate.x[i];
    if (x < x_min || x > x_max) continue;
    const double d = estimate.nu_bar_hat[i] - nu_bar(x);
    const double e = d * d;
    if (have_prev) total += 0.5 * (e + prev_e) * (x - prev_x);
    prev_x = x;
    prev_e = e;
    have_prev = true;
  }
  return total;
}

void RateStudyConfig::validate() const {
  const auto fail = [](const std::string& what) { throw ConfigError("rate study: " + what); };
  if (s < 0) fail("smoothness s must be >= 0");
  if (replicates < 2) fail("replicate count must be >= 2");
  if (ladder.size() < 2) fail("n-ladder needs at least two sample sizes");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 1) fail("sample sizes must be >= 1");
    if (i > 0 && ladder[i] <= ladder[i - 1]) fail("n-ladder must be strictly increasing");
  }
  if (!(x_max > x_min) || x_points < 2) fail("x-range must be nonempty with >= 2 points");
  if (decay == DecayClass::Exponential && !(alpha > 0.0)) fail("alpha must be > 0");
}

double RateStudyConfig::bandwidth(std::size_t n) const {
  const auto nd = static_cast<double>(n);
  return decay == DecayClass::Polynomial ? choose_vn_polynomial(nd, beta, s)
                                         : choose_vn_exponential(nd, alpha, s);
}

Quartiles quartiles(std::vector<double> values) {
  std::erase_if(values, [](double v) { return !std::isfinite(v); });
  if (values.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan};
  }
  std::sort(values.begin(), values.end());
  const auto at = [&values](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return {at(0.25), at(0.5), at(0.75)};
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double k = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

namespace {

std::vector<double> medians(const std::vector<Quartiles>& q) {
  std::vector<double> out;
  out.reserve(q.size());
  for (const auto& e : q) out.push_back(e.median);
  return out;
}

}  // namespace

std::vector<double> MiseReport::median_sq_err_mu() const { return medians(sq_err_mu); }
std::vector<double> MiseReport::median_sq_err_lambda() const { return medians(sq_err_lambda); }
std::vector<double> MiseReport::median_mise() const { return medians(mise); }

MiseReport summarize_replicates(std::span<const std::size_t> ns, std::span<const double> vns,
                                const std::vector<std::vector<double>>& sq_err_mu,
                                const std::vector<std::vector<double>>& sq_err_lambda,
                                const std::vector<std::vector<double>>& mise_values,
                                std::span<const std::size_t> failures) {
  MiseReport report;
  report.n.assign(ns.begin(), ns.end());
  report.vn.assign(vns.begin(), vns.end());
  report.failures.assign(failures.begin(), failures.end());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    report.sq_err_mu.push_back(quartiles(sq_err_mu.at(i)));
    report.sq_err_lambda.push_back(quartiles(sq_err_lambda.at(i)));
    report.mise.push_back(quartiles(i < mise_values.size() ? mise_values[i] : std::vector<double>{}));
  }
  std::vector<double> nd(ns.begin(), ns.end());
  report.slope_mu = loglog_slope(nd, report.median_sq_err_mu());
  report.slope_lambda = loglog_slope(nd, report.median_sq_err_lambda());
  report.slope_mise = loglog_slope(nd, report.median_mise());
  return report;
}

MiseReport rate_study(const RateStudyConfig& study, const SubordinatorModel& model,
                      const EstimationConfig& config_template) {
  study.validate();
  config_template.validate();
  const double mu = model.drift();
  const double lambda = model.total_jump_mass();
  const double u0 = config_template.u0;
  const auto truth = [&model, u0](double x) { return std::exp(-u0 * x) * xi_levy_density(model, x); };
  const auto x_grid = linspace(study.x_min, study.x_max, study.x_points);

  const std::size_t rungs = study.ladder.size();
  std::vector<double> vns(rungs);
  std::vector<std::vector<double>> err_mu(rungs), err_lambda(rungs), err_mise(rungs);
  std::vector<std::size_t> failures(rungs, 0);

  for (std::size_t i = 0; i < rungs; ++i) {
    const std::size_t n = study.ladder[i];
    EstimationConfig config = config_template;
    config.vn = study.bandwidth(n);
    vns[i] = config.vn;
    const std::uint64_t rung_seed = derive_seed(study.seed, n);
    for (std::size_t r = 0; r < study.replicates; ++r) {
      try {
        const Sample sample = sample_model(model, n, derive_seed(rung_seed, r));
        if (study.compute_mise) {
          const auto run = run_algorithm2_full(sample, config, x_grid);
          err_mu[i].push_back(std::pow(run.triplet.mu_hat - mu, 2));
          err_lambda[i].push_back(std::pow(run.triplet.lambda_hat - lambda, 2));
          err_mise[i].push_back(mise(run.density, truth, study.x_min, study.x_max));
        } else {
          const auto t = run_algorithm1(sample, config);
          err_mu[i].push_back(std::pow(t.mu_hat - mu, 2));
          err_lambda[i].push_back(std::pow(t.lambda_hat - lambda, 2));
        }
      } catch (const Error&) {
        ++failures[i];
      }
    }
  }
  return summarize_replicates(study.ladder, vns, err_mu, err_lambda, err_mise, failures);
}

nlohmann::json to_json(const MiseReport& report) {
  const auto column = [](const std::vector<Quartiles>& q, double Quartiles::*field) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : q) {
      const double v = e.*field;
      arr.push_back(std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr));
    }
    return arr;
  };
  const auto scalar = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  return {{"n", report.n},
          {"vn", report.vn},
          {"median_sq_err_mu", column(report.sq_err_mu, &Quartiles::median)},
          {"median_sq_err_lambda", column(report.sq_err_lambda, &Quartiles::median)},
          {"median_mise", column(report.mise, &Quartiles::median)},
          {"q1_sq_err_mu", column(report.sq_err_mu, &Quartiles::q1)},
          {"q3_sq_err_mu", column(report.sq_err_mu, &Quartiles::q3)},
          {"q1_sq_err_lambda", column(report.sq_err_lambda, &Quartiles::q1)},
          {"q3_sq_err_lambda", column(report.sq_err_lambda, &Quartiles::q3)},
          {"q1_mise", column(report.mise, &Quartiles::q1)},
          {"q3_mise", column(report.mise, &Quartiles::q3)},
          {"failures", report.failures},
          {"slope_mu", scalar(report.slope_mu)},
          {"slope_lambda", scalar(report.slope_lambda)},
          {"slope_mise", scalar(report.slope_mise)}};
}

}  // namespace gouest
