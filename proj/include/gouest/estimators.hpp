#pragma once

// Recovery of the Lévy triplet from a stationary sample.
//
// Algorithm 1 fits phi(u0 + i v) ~ lambda + mu (u0 + i v) on v = alpha_m V_n,
// alpha_m = eps + m (1 - eps)/M (m = 1..M), where the Fourier term of the
// exponent has decayed. Algorithm 2 then estimates F[nu_bar](-v) on the
// symmetric grid alpha_m = -1 + 2m/M (m = 0..M) and inverts it with a
// regularizing kernel:
//
//   nu_n(x) = e^{u0 x} (dv / 2pi) sum_m e^{i v_m x} F^[nu_bar](-v_m) K(alpha_m),
//   dv = 2 V_n / M,  nu_bar_n(x) = e^{-u0 x} nu_n(x).

#include <cstddef>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <span>
#include <vector>

#include "gouest/kernels.hpp"
#include "gouest/mellin.hpp"
#include "gouest/sampling.hpp"

namespace gouest {

struct EstimationConfig {
  double u0 = 1.0;
  double vn = 5.0;
  double eps = 0.1;
  std::size_t grid_m = 50;           // Algorithm 1 grid count
  std::size_t density_grid_m = 200;  // Algorithm 2 grid count
  WeightKind weight = WeightKind::Flat;
  KernelSpec kernel;
  std::optional<double> floor;  // ill-conditioning floor; default_floor() if unset
  bool positive_part = false;   // clip nu_n at 0 after inversion

  /// Throws ConfigError.
  void validate() const;
  WeightSpec weight_spec() const { return {weight, eps}; }
};

nlohmann::json to_json(const EstimationConfig& config);

/// eps + m (1 - eps)/M for m = 1..M.
std::vector<double> mu_lambda_alphas(double eps, std::size_t m);
/// -1 + 2m/M for m = 0..M.
std::vector<double> density_alphas(std::size_t m);
std::vector<double> scale(std::span<const double> alphas, double factor);
/// count equally spaced points on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t count);

struct TripletEstimate {
  double mu_hat = 0.0;
  double lambda_hat = 0.0;
  LaplaceCurve curve;  // Y_n on the Algorithm 1 grid
  double vn = 0.0;
  std::size_t ill_conditioned = 0;
};

nlohmann::json to_json(const TripletEstimate& estimate);

/// mu^ = sum w_m alpha_m Im Y_m / (V_n sum w_m alpha_m^2).
/// Throws GridMismatch when curve.v != alpha_m V_n and DegenerateWeights
/// when the normalizer vanishes.
double estimate_mu(const LaplaceCurve& curve, const EstimationConfig& config);

/// Same estimator with explicit weights per grid point.
double estimate_mu_weighted(const LaplaceCurve& curve, std::span<const double> alphas,
                            std::span<const double> weights, double vn);

/// lambda^ = sum w_m Re Y_m / sum w_m - mu^ u0.
double estimate_lambda(const LaplaceCurve& curve, double mu_hat, const EstimationConfig& config);
double estimate_lambda_weighted(const LaplaceCurve& curve, std::span<const double> alphas,
                                std::span<const double> weights, double vn, double mu_hat);

/// F^[nu_bar](-v) = -Y_n(u0 + i v) + mu^ (u0 + i v) + lambda^ at a grid
/// point v of the curve; GridMismatch if v is not on the grid.
Complex estimate_fourier_nu_bar(const LaplaceCurve& curve, double mu_hat, double lambda_hat,
                                double v);
/// Same over the whole curve.
std::vector<Complex> estimate_fourier_nu_bar(const LaplaceCurve& curve, double mu_hat,
                                             double lambda_hat);

struct LevyDensityEstimate {
  std::vector<double> x;
  std::vector<double> nu_hat;          // Re nu_n(x)
  std::vector<double> nu_bar_hat;      // e^{-u0 x} Re nu_n(x)
  std::vector<double> imag_residual;   // Im nu_n(x)
  double u0 = 0.0;
  double vn = 0.0;
  std::size_t grid_m = 0;

  std::size_t size() const noexcept { return x.size(); }
};

/// fhat[m] = F^[nu_bar](-alpha_m V_n) on the density grid, m = 0..M with
/// M = config.density_grid_m. Throws GridMismatch on a size mismatch.
LevyDensityEstimate invert_levy_density(std::span<const Complex> fhat,
                                        const EstimationConfig& config,
                                        std::span<const double> x_grid);

/// Algorithm 1: Y_n on the one-sided grid, then mu^ and lambda^.
TripletEstimate run_algorithm1(const Sample& sample, const EstimationConfig& config);

struct Algorithm2Result {
  TripletEstimate triplet;
  LaplaceCurve curve;                 // Y_n on the symmetric grid
  std::vector<Complex> fourier;       // F^[nu_bar](-v_m)
  LevyDensityEstimate density;
};

Algorithm2Result run_algorithm2_full(const Sample& sample, const EstimationConfig& config,
                                     std::span<const double> x_grid);

/// Algorithm 2 (uses Algorithm 1's mu^, lambda^ internally).
LevyDensityEstimate run_algorithm2(const Sample& sample, const EstimationConfig& config,
                                   std::span<const double> x_grid);

/// CSV: x,nu_hat,nu_bar_hat,imag_residual
void write_csv(const LevyDensityEstimate& estimate, std::ostream& out);

}  // namespace gouest
