#pragma once

// Parametric Lévy subordinators with finite jump mass and no Gaussian part.
//
//  * CpExp:       drift mu >= 0 plus compound Poisson jumps with Lévy
//                 density a*b*exp(-b x) on x > 0 (total mass a).
//  * TruncNormCp: xi_t = -log(q) * sum_{k <= N_t} eta_k with N a Poisson
//                 process of rate lambda and eta ~ N(0,1) truncated to
//                 (alpha, inf). No drift.

#include <json.hpp>
#include <variant>

#include "gouest/special.hpp"

namespace gouest {

struct CpExpParams {
  double mu = 0.0;
  double a = 1.0;
  double b = 1.0;
};

struct TruncNormCpParams {
  double lambda = 1.0;
  double q = 0.5;
  double alpha = 0.1;
};

class SubordinatorModel {
 public:
  using Params = std::variant<CpExpParams, TruncNormCpParams>;

  /// Throws ConfigError on invalid parameters.
  static SubordinatorModel cp_exp(double mu, double a, double b);
  static SubordinatorModel trunc_norm_cp(double lambda, double q, double alpha);

  const Params& params() const noexcept { return params_; }
  bool is_cp_exp() const noexcept { return std::holds_alternative<CpExpParams>(params_); }
  const CpExpParams& cp_exp_params() const { return std::get<CpExpParams>(params_); }
  const TruncNormCpParams& trunc_norm_params() const {
    return std::get<TruncNormCpParams>(params_);
  }

  double drift() const noexcept;
  /// nu(R+), the jump intensity lambda of the triplet.
  double total_jump_mass() const noexcept;
  /// Lower end of the jump-size support of xi (0 for CpExp).
  double jump_support_start() const noexcept;

 private:
  explicit SubordinatorModel(Params p) : params_(p) {}
  Params params_;
};

/// Displayed Lévy density of the model.
///
/// CpExp: a b exp(-b x) on x > 0. TruncNormCp: lambda p(x) / (1 - F(alpha))
/// on x > alpha, i.e. the intensity measure of the eta_k (jump sizes before
/// the -log q scaling).
double levy_density(const SubordinatorModel& model, double x);

/// Lévy density of xi itself, the object the estimators recover. Identical
/// to levy_density for CpExp; for TruncNormCp it is the eta density pushed
/// through x -> -log(q) x.
double xi_levy_density(const SubordinatorModel& model, double x);

/// phi(z) = -log E[exp(-z xi_1)].
///
/// Requires Re z > -b (CpExp) or Re z >= 0 (TruncNormCp). Throws PoleError
/// at z = -b and DomainError elsewhere outside the admissible half-plane.
Complex laplace_exponent(const SubordinatorModel& model, Complex z);

/// {"model":"cp_exp","mu":..,"a":..,"b":..} or
/// {"model":"trunc_norm_cp","lambda":..,"q":..,"alpha":..}
SubordinatorModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const SubordinatorModel& model);

}  // namespace gouest
