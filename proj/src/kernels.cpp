#include "gouest/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "gouest/errors.hpp"

namespace gouest {

double weight(const WeightSpec& spec, double alpha) {
  if (!(alpha >= spec.eps && alpha <= 1.0)) return 0.0;
  switch (spec.kind) {
    case WeightKind::Flat:
      return 1.0;
    case WeightKind::Epanechnikov: {
      const double t = (2.0 * alpha - (1.0 + spec.eps)) / (1.0 - spec.eps);
      return std::max(0.0, 1.0 - t * t);
    }
  }
  return 0.0;
}

double flat_top(double x) {
  const double ax = std::abs(x);
  if (ax <= 0.05) return 1.0;
  if (ax >= 1.0) return 0.0;
  return std::exp(-std::exp(-1.0 / (ax - 0.05)) / (1.0 - ax));
}

double kernel(const KernelSpec& spec, double x) {
  switch (spec.kind) {
    case KernelKind::FlatTop:
      return flat_top(x);
  }
  return 0.0;
}

bool verify_kernel_condition(const KernelSpec& spec, int s, double A) {
  if (s < 0) throw DomainError("verify_kernel_condition requires s >= 0");
  constexpr int points = 10000;
  for (int j = 0; j < points; ++j) {
    // Midpoints of 10^4 equal cells of [-1, 1]; never hits 0.
    const double x = -1.0 + 2.0 * (j + 0.5) / points;
    if (std::abs(1.0 - kernel(spec, x)) > A * std::pow(std::abs(x), s)) return false;
  }
  return true;
}

WeightKind parse_weight(const std::string& name) {
  if (name == "flat") return WeightKind::Flat;
  if (name == "epanechnikov") return WeightKind::Epanechnikov;
  throw ConfigError("unknown weight \"" + name + "\" (expected flat or epanechnikov)");
}

KernelKind parse_kernel(const std::string& name) {
  if (name == "flat_top") return KernelKind::FlatTop;
  throw ConfigError("unknown kernel \"" + name + "\" (expected flat_top)");
}

std::string to_string(WeightKind kind) {
  return kind == WeightKind::Flat ? "flat" : "epanechnikov";
}

std::string to_string(KernelKind) { return "flat_top"; }

}  // namespace gouest
