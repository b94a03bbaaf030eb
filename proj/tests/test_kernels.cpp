#include <doctest.h>

#include <cmath>

#include "gouest/errors.hpp"
#include "gouest/kernels.hpp"

using namespace gouest;

TEST_CASE("flat-top kernel values") {
  CHECK(flat_top(0.0) == 1.0);
  CHECK(flat_top(0.05) == 1.0);
  CHECK(flat_top(-0.03) == 1.0);
  CHECK(flat_top(1.0) == 0.0);
  CHECK(flat_top(-1.5) == 0.0);
  // exp(-exp(-1/(x-0.05))/(1-x)), mpmath
  CHECK(flat_top(0.5) == doctest::Approx(0.80514246147569648).epsilon(1e-14));
  CHECK(flat_top(-0.9) == doctest::Approx(0.045791734253414469).epsilon(1e-13));
}

TEST_CASE("flat-top kernel is even, bounded and nonincreasing in |x|") {
  double prev = 1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    const double k = flat_top(x);
    CHECK(k == flat_top(-x));
    CHECK(k >= 0.0);
    CHECK(k <= prev);
    prev = k;
  }
}

TEST_CASE("kernel condition holds for the tested orders") {
  const KernelSpec spec;
  for (int s : {0, 1, 2, 4}) {
    CHECK(verify_kernel_condition(spec, s, 1.0 / std::pow(0.05, s)));
  }
  CHECK_FALSE(verify_kernel_condition(spec, 2, 1.0));
  CHECK_THROWS_AS(verify_kernel_condition(spec, -1, 1.0), DomainError);
}

TEST_CASE("weights") {
  const WeightSpec flat{WeightKind::Flat, 0.1};
  const WeightSpec epa{WeightKind::Epanechnikov, 0.1};
  CHECK(weight(flat, 0.5) == 1.0);
  CHECK(weight(flat, 0.05) == 0.0);
  CHECK(weight(flat, 1.01) == 0.0);
  CHECK(weight(epa, 0.55) == doctest::Approx(1.0));
  CHECK(weight(epa, 0.1) == doctest::Approx(0.0));
  CHECK(weight(epa, 1.0) == doctest::Approx(0.0));
  CHECK(weight(epa, 0.3) == doctest::Approx(weight(epa, 0.8)));
}

TEST_CASE("names round trip") {
  CHECK(parse_weight(to_string(WeightKind::Epanechnikov)) == WeightKind::Epanechnikov);
  CHECK(parse_kernel("flat_top") == KernelKind::FlatTop);
  CHECK_THROWS_AS(parse_weight("gauss"), ConfigError);
  CHECK_THROWS_AS(parse_kernel("sinc"), ConfigError);
}
