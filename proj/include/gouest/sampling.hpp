#pragma once

// Stationary samples of the exponential functional A = int_0^inf exp(-xi_t) dt.
//
// Observations are treated as draws from the stationary law, so samples are
// i.i.d.; no path of the generalized OU process is simulated.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gouest/models.hpp"

namespace gouest {

/// Strictly positive observations X_1..X_n.
class Sample {
 public:
  /// Throws DomainError if any value is not a finite positive number.
  explicit Sample(std::vector<double> values, double spacing = 1.0, std::uint64_t seed = 0);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double spacing() const noexcept { return spacing_; }
  std::uint64_t seed() const noexcept { return seed_; }

  double mean() const noexcept;
  double variance() const noexcept;

 private:
  std::vector<double> values_;
  double spacing_;
  std::uint64_t seed_;
};

struct SeriesTruncationPolicy {
  double tolerance = 1e-12;         // relative tail tolerance
  std::size_t max_terms = 1000000;  // per draw

  void validate() const;
};

/// mu = 0: A ~ Gamma(shape b + 1, rate a).
Sample sample_gamma_case(std::size_t n, double a, double b, std::uint64_t seed);

/// mu > 0: A ~ Beta(b + 1, a / mu) / mu, supported on (0, 1/mu].
Sample sample_beta_case(std::size_t n, double a, double b, double mu, std::uint64_t seed);

/// A = sum_k q^{S_k} (T_{k+1} - T_k) for the truncated-normal compound
/// Poisson model. Terms are added until the expected-tail bound
/// q^{S_k} / (lambda (1 - q^alpha)) drops below tolerance * partial sum.
/// Throws TruncationError if max_terms is hit first.
///
/// Draw i uses its own stream keyed by derive_seed(seed, i), so changing
/// the tolerance never shifts the random numbers of later draws.
Sample sample_series_cp(std::size_t n, const TruncNormCpParams& params,
                        const SeriesTruncationPolicy& policy, std::uint64_t seed);

/// Picks the exact sampler for the model (Gamma, Beta or series).
Sample sample_model(const SubordinatorModel& model, std::size_t n, std::uint64_t seed,
                    const SeriesTruncationPolicy& policy = {});

/// Bessel-type stationary density
///   pi3(x) = C x^{b-1/2} exp(-1/(2x)) I_nu(1/(2x)),  nu = sqrt(a + 1/4),
/// normalized numerically (C cached per (a, b)). Throws DomainError for
/// x <= 0 or when the density is not integrable (nu <= b + 1/2).
double density_pi3(double x, double a, double b);

/// Unnormalized pi3 (C = 1).
double density_pi3_unnormalized(double x, double a, double b);

}  // namespace gouest
