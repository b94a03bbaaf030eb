#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gouest/errors.hpp"
#include "gouest/estimators.hpp"
#include "gouest/mellin.hpp"
#include "gouest/models.hpp"

using namespace gouest;

TEST_CASE("empirical Mellin transform") {
  const Sample s({1.0, 2.0, 4.0});
  CHECK(std::abs(empirical_mellin(s, Complex(1.0, 0.0)).value - 1.0) < 1e-15);
  CHECK(std::abs(empirical_mellin(s, Complex(2.0, 0.0)).value - 7.0 / 3.0) < 1e-14);
  CHECK(std::abs(empirical_mellin(s, Complex(3.0, 0.0)).value - 7.0) < 1e-13);
  // X^{i t} = exp(i t log X)
  const Complex z(1.0, 0.5);
  Complex want(0.0, 0.0);
  for (double x : {1.0, 2.0, 4.0}) want += std::exp(Complex(0.0, 0.5 * std::log(x)));
  CHECK(std::abs(empirical_mellin(s, z).value - want / 3.0) < 1e-15);
  CHECK(empirical_mellin(s, z).n == 3);
}

TEST_CASE("empirical Mellin transform is one at z = 1 and conjugate symmetric") {
  const Sample s = sample_beta_case(1000, 0.7, 0.2, 1.8, 4);
  CHECK(std::abs(empirical_mellin(s, Complex(1.0, 0.0)).value - 1.0) < 1e-14);
  const Complex z(3.0, 7.5);
  CHECK(std::abs(empirical_mellin(s, std::conj(z)).value - std::conj(empirical_mellin(s, z).value)) <
        1e-15);
}

TEST_CASE("laplace_estimate with the exact Beta transform at 29 + 5i") {
  const Complex z(29.0, 5.0);
  const Complex y = z * mellin_theoretical_beta(z, 0.7, 0.2, 1.8) /
                    mellin_theoretical_beta(z + 1.0, 0.7, 0.2, 1.8);
  CHECK(std::abs(y - z * (1.8 + 0.7 / (0.2 + z))) < 1e-8);
}

TEST_CASE("laplace_estimate on a constant sample is z / c") {
  const Sample s(std::vector<double>(10, 2.0));
  const Complex z(1.5, 2.0);
  const auto p = laplace_estimate(s, z, 1e-12);
  CHECK(std::abs(p.value - z / 2.0) < 1e-14);
  CHECK_FALSE(p.ill_conditioned);
  CHECK(laplace_estimate(s, z, 1e6).ill_conditioned);
  CHECK_THROWS_AS(laplace_estimate(s, z, 0.0), DomainError);
  CHECK(std::abs(laplace_estimate(s, Complex(0.0, 0.0), 1e-12).value) == 0.0);
}

// Reference values from mpmath.
TEST_CASE("closed-form Mellin transforms") {
  CHECK(mellin_theoretical_beta(Complex(2.0, 0.0), 0.7, 0.2, 1.8).real() ==
        doctest::Approx(0.41958041958041959).epsilon(1e-13));
  CHECK(std::abs(mellin_theoretical_beta(Complex(5.0, 3.0), 0.7, 0.2, 1.8) -
                 Complex(-0.018528200219671699, -0.043096252887008017)) < 1e-14);
  CHECK(mellin_theoretical_gamma(Complex(2.0, 0.0), 0.7, 0.2).real() ==
        doctest::Approx(1.7142857142857145).epsilon(1e-13));
  CHECK(std::abs(mellin_theoretical_gamma(Complex(1.0, 2.0), 0.7, 0.2) -
                 Complex(0.08793054439069246, 0.17181688566547906)) < 1e-14);
  CHECK(std::abs(mellin_theoretical_beta(Complex(1.0, 0.0), 0.7, 0.2, 1.8) - 1.0) < 1e-14);
  CHECK_THROWS(mellin_theoretical_beta(Complex(-0.2, 0.0), 0.7, 0.2, 1.8));
}

TEST_CASE("closed forms satisfy the Mellin recursion") {
  const auto beta = SubordinatorModel::cp_exp(1.8, 0.7, 0.2);
  const auto gamma = SubordinatorModel::cp_exp(0.0, 0.7, 0.2);
  for (double u : {1.0, 5.0, 29.0}) {
    for (double v = -30.0; v <= 30.0; v += 2.5) {
      const Complex z(u, v);
      const Complex yb = z * mellin_theoretical_beta(z, 0.7, 0.2, 1.8) /
                         mellin_theoretical_beta(z + 1.0, 0.7, 0.2, 1.8);
      const Complex yg =
          z * mellin_theoretical_gamma(z, 0.7, 0.2) / mellin_theoretical_gamma(z + 1.0, 0.7, 0.2);
      CHECK(std::abs(yb - laplace_exponent(beta, z)) < 1e-8);
      CHECK(std::abs(yg - laplace_exponent(gamma, z)) < 1e-8);
    }
  }
}

TEST_CASE("laplace_curve agrees with pointwise estimates") {
  const Sample s = sample_beta_case(2000, 0.7, 0.2, 1.8, 8);
  const auto v = linspace(-10.0, 10.0, 21);
  const auto curve = laplace_curve(s, 5.0, v);
  REQUIRE(curve.size() == 21);
  const double floor = default_floor(s, 5.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto p = laplace_estimate(s, Complex(5.0, v[i]), floor);
    CHECK(std::abs(curve.values[i] - p.value) <= 1e-10 * std::abs(p.value));
    CHECK(curve.ill_conditioned[i] == p.ill_conditioned);
  }
}

TEST_CASE("estimated Laplace curve approaches the exponent") {
  const auto model = SubordinatorModel::cp_exp(1.8, 0.7, 0.2);
  const Sample s = sample_model(model, 100000, 21);
  const auto v = linspace(-10.0, 10.0, 41);
  const auto curve = laplace_curve(s, 29.0, v);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex phi = laplace_exponent(model, Complex(29.0, v[i]));
    CHECK(std::abs(curve.values[i] - phi) / std::abs(phi) < 0.05);
  }
  CHECK(curve.ill_count() == 0);
}

TEST_CASE("constant sample flags every point") {
  const Sample s(std::vector<double>(100, 0.3));
  const auto v = linspace(-1.0, 1.0, 5);
  CHECK(laplace_curve(s, 1.0, v).ill_count() == 5);
}

TEST_CASE("plug-in curve from a closed form") {
  const auto v = linspace(-5.0, 5.0, 11);
  const auto curve = laplace_curve_from_mellin(
      [](Complex z) { return mellin_theoretical_gamma(z, 0.7, 0.2); }, 1.0, v);
  const auto model = SubordinatorModel::cp_exp(0.0, 0.7, 0.2);
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(std::abs(curve.values[i] - laplace_exponent(model, Complex(1.0, v[i]))) < 1e-10);
  }
}

TEST_CASE("Laplace curve CSV layout") {
  const Sample s({0.5, 0.6, 0.7});
  const std::vector<double> v{0.0, 1.0};
  std::ostringstream out;
  write_csv(laplace_curve(s, 1.0, v, 1e-9), out);
  const std::string text = out.str();
  CHECK(text.rfind("v,re_Y,im_Y,abs_Y,denom_abs,ill_flag\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(text.find('\r') == std::string::npos);
}
