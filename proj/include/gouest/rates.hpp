#pragma once

// Bandwidth rules for V_n and the Monte-Carlo convergence-rate harness.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <json.hpp>
#include <span>
#include <vector>

#include "gouest/estimators.hpp"
#include "gouest/models.hpp"

namespace gouest {

/// V_n = n^{1/(2 beta + 2 s + 3)} (polynomially decaying Mellin transform).
/// DomainError if 2 beta + 2 s + 3 <= 0.
double choose_vn_polynomial(double n, double beta, int s);

/// V_n = log(n)/(2 alpha) - (s + 2) log(log(n))/alpha (exponential decay).
/// DomainError if n < 3 or the result is not positive.
double choose_vn_exponential(double n, double alpha, int s);

/// Trapezoid integral of |nu_bar_n - nu_bar|^2 over the estimate's grid
/// points inside [x_min, x_max].
double mise(const LevyDensityEstimate& estimate, const std::function<double(double)>& nu_bar,
            double x_min, double x_max);

enum class DecayClass { Polynomial, Exponential };

struct RateStudyConfig {
  int s = 0;
  double beta = 0.0;   // polynomial decay exponent
  double alpha = 1.0;  // exponential decay rate
  DecayClass decay = DecayClass::Polynomial;
  std::size_t replicates = 25;
  std::vector<std::size_t> ladder{1000, 10000, 100000};
  double radius = 1.0;  // metadata only
  std::uint64_t seed = 1;
  double x_min = 0.0;
  double x_max = 3.0;
  std::size_t x_points = 301;
  bool compute_mise = true;

  /// Throws ConfigError (e.g. ladder not strictly increasing, < 2 rungs).
  void validate() const;
  double bandwidth(std::size_t n) const;
};

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

/// Linear-interpolation quartiles of the finite entries.
Quartiles quartiles(std::vector<double> values);

/// Least-squares slope of log(y) on log(x) over entries with x, y > 0; NaN
/// if fewer than two remain.
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct MiseReport {
  std::vector<std::size_t> n;
  std::vector<double> vn;
  std::vector<Quartiles> sq_err_mu;
  std::vector<Quartiles> sq_err_lambda;
  std::vector<Quartiles> mise;
  std::vector<std::size_t> failures;
  double slope_mu = 0.0;
  double slope_lambda = 0.0;
  double slope_mise = 0.0;

  std::vector<double> median_sq_err_mu() const;
  std::vector<double> median_sq_err_lambda() const;
  std::vector<double> median_mise() const;
};

/// Aggregates per-replicate errors (one vector per ladder rung).
MiseReport summarize_replicates(std::span<const std::size_t> ns, std::span<const double> vns,
                                const std::vector<std::vector<double>>& sq_err_mu,
                                const std::vector<std::vector<double>>& sq_err_lambda,
                                const std::vector<std::vector<double>>& mise,
                                std::span<const std::size_t> failures);

/// Runs study.replicates independent replicates of Algorithms 1-2 at each
/// ladder size, V_n from the bandwidth rule of the decay class. Replicate
/// seeds are derive_seed(derive_seed(seed, rung), replicate). A failing
/// replicate is counted, not fatal.
MiseReport rate_study(const RateStudyConfig& study, const SubordinatorModel& model,
                      const EstimationConfig& config_template);

/// {"n":[..], "median_sq_err_mu":[..], "median_sq_err_lambda":[..],
///  "median_mise":[..], "slope_mu":.., "slope_mise":.., ...}
nlohmann::json to_json(const MiseReport& report);

}  // namespace gouest
