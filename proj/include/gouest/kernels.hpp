#pragma once

#include <string>

namespace gouest {

enum class WeightKind { Flat, Epanechnikov };

/// Weight w(alpha) of the least-squares fits, supported on [eps, 1].
struct WeightSpec {
  WeightKind kind = WeightKind::Flat;
  double eps = 0.1;
};

/// Flat: 1 on [eps, 1]. Epanechnikov: (1 - t^2)_+ with t the affine map of
/// [eps, 1] onto [-1, 1]. Zero outside [eps, 1] in both cases.
double weight(const WeightSpec& spec, double alpha);

enum class KernelKind { FlatTop };

/// Regularizing kernel of the Fourier inversion, supported on [-1, 1].
struct KernelSpec {
  KernelKind kind = KernelKind::FlatTop;
  double plateau = 0.05;
  double support = 1.0;
};

/// 1 on |x| <= 0.05, exp(-exp(-1/(|x|-0.05)) / (1-|x|)) on 0.05 < |x| < 1,
/// 0 on |x| >= 1.
double flat_top(double x);

double kernel(const KernelSpec& spec, double x);

/// Checks |1 - K(x)| <= A |x|^s on a 10^4-point grid of [-1, 1] \ {0}.
bool verify_kernel_condition(const KernelSpec& spec, int s, double A);

/// "flat" | "epanechnikov"; throws ConfigError otherwise.
WeightKind parse_weight(const std::string& name);
/// "flat_top"; throws ConfigError otherwise.
KernelKind parse_kernel(const std::string& name);

std::string to_string(WeightKind kind);
std::string to_string(KernelKind kind);

}  // namespace gouest
