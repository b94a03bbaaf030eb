#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "gouest/errors.hpp"
#include "gouest/rng.hpp"
#include "gouest/sampling.hpp"

using namespace gouest;

TEST_CASE("counter RNG is deterministic and keyed") {
  CounterRng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
  CHECK(a.counter() == 100);
}

TEST_CASE("uniform_open stays in (0, 1) with mean 1/2") {
  CounterRng rng(7);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform_open();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
}

TEST_CASE("derived seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 10; ++s) {
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(s, i));
  }
  CHECK(seen.size() == 10000);
}

TEST_CASE("Sample validates its values") {
  CHECK_THROWS_AS(Sample({1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Sample({1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(Sample({1.0, std::nan("")}), DomainError);
  const Sample s({1.0, 2.0, 3.0});
  CHECK(s.mean() == doctest::Approx(2.0));
  CHECK(s.variance() == doctest::Approx(1.0));
}

// Moments E[A^{k}] = M(k + 1) from the Mellin recursion, evaluated in mpmath.
TEST_CASE("Beta-case sampler moments") {
  const Sample s = sample_beta_case(100000, 0.7, 0.2, 1.8, 3);
  CHECK(s.size() == 100000);
  CHECK(s.mean() == doctest::Approx(0.41958041958041959).epsilon(0.005));
  CHECK(s.variance() == doctest::Approx(0.022037448130668298).epsilon(0.03));
  const auto v = s.values();
  CHECK(*std::max_element(v.begin(), v.end()) < 1.0 / 1.8);
}

TEST_CASE("Gamma-case sampler moments") {
  const Sample s = sample_gamma_case(100000, 0.7, 0.2, 4);
  CHECK(s.mean() == doctest::Approx(1.2 / 0.7).epsilon(0.01));
  CHECK(s.variance() == doctest::Approx(1.2 / 0.49).epsilon(0.03));
}

TEST_CASE("series sampler moments for truncated-normal jumps") {
  const TruncNormCpParams p{1.0, 0.5, 0.1};
  const Sample s = sample_series_cp(100000, p, {}, 9);
  CHECK(s.mean() == doctest::Approx(2.4443569772605062).epsilon(0.01));
  double m2 = 0.0;
  for (double x : s.values()) m2 += x * x;
  CHECK(m2 / s.size() == doctest::Approx(8.0102702378342897).epsilon(0.03));
}

TEST_CASE("samplers are reproducible per seed") {
  const auto model = SubordinatorModel::trunc_norm_cp(1.0, 0.5, 0.1);
  const Sample a = sample_model(model, 500, 17);
  const Sample b = sample_model(model, 500, 17);
  const Sample c = sample_model(model, 500, 18);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
  CHECK(a.seed() == 17);
}

TEST_CASE("series sampler reports truncation") {
  const TruncNormCpParams p{1.0, 0.5, 0.1};
  SeriesTruncationPolicy policy;
  policy.max_terms = 1;
  CHECK_THROWS_AS(sample_series_cp(10, p, policy, 1), TruncationError);
  policy.max_terms = 0;
  CHECK_THROWS_AS(policy.validate(), ConfigError);
}

// Unnormalized values and the normalized value at x = 0.7 from mpmath.
TEST_CASE("pi3 density") {
  CHECK(density_pi3_unnormalized(0.7, 3.0, 1.0) ==
        doctest::Approx(0.039851565885732473).epsilon(1e-12));
  CHECK(density_pi3_unnormalized(0.01, 3.0, 1.0) ==
        doctest::Approx(0.0054734939048291016).epsilon(1e-10));
  CHECK(density_pi3(0.7, 3.0, 1.0) == doctest::Approx(0.21190518426383175).epsilon(1e-8));
  CHECK(density_pi3_unnormalized(1e-4, 3.0, 1.0) < 1e-2);
  CHECK_THROWS_AS(density_pi3(0.0, 3.0, 1.0), DomainError);
  CHECK_THROWS_AS(density_pi3(1.0, 1.0, 1.0), DomainError);
}
