#include "gouest/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gouest/errors.hpp"

namespace gouest {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid model: " + what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

SubordinatorModel SubordinatorModel::cp_exp(double mu, double a, double b) {
  require(finite(mu) && mu >= 0.0, "cp_exp requires mu >= 0");
  require(finite(a) && a > 0.0, "cp_exp requires a > 0");
  require(finite(b) && b > 0.0, "cp_exp requires b > 0");
  return SubordinatorModel(CpExpParams{mu, a, b});
}

SubordinatorModel SubordinatorModel::trunc_norm_cp(double lambda, double q, double alpha) {
  require(finite(lambda) && lambda > 0.0, "trunc_norm_cp requires lambda > 0");
  require(finite(q) && q > 0.0 && q < 1.0, "trunc_norm_cp requires 0 < q < 1");
  require(finite(alpha) && alpha > 0.0, "trunc_norm_cp requires alpha > 0");
  return SubordinatorModel(TruncNormCpParams{lambda, q, alpha});
}

double SubordinatorModel::drift() const noexcept {
  return std::visit(Overloaded{[](const CpExpParams& p) { return p.mu; },
                               [](const TruncNormCpParams&) { return 0.0; }},
                    params_);
}

double SubordinatorModel::total_jump_mass() const noexcept {
  return std::visit(Overloaded{[](const CpExpParams& p) { return p.a; },
                               [](const TruncNormCpParams& p) { return p.lambda; }},
                    params_);
}

double SubordinatorModel::jump_support_start() const noexcept {
  return std::visit(
      Overloaded{[](const CpExpParams&) { return 0.0; },
                 [](const TruncNormCpParams& p) { return -std::log(p.q) * p.alpha; }},
      params_);
}

double levy_density(const SubordinatorModel& model, double x) {
  return std::visit(
      Overloaded{[x](const CpExpParams& p) {
                   return x > 0.0 ? p.a * p.b * std::exp(-p.b * x) : 0.0;
                 },
                 [x](const TruncNormCpParams& p) {
                   if (x <= p.alpha) return 0.0;
                   return p.lambda * special::normal_pdf(x) /
                          (1.0 - special::normal_cdf(p.alpha));
                 }},
      model.params());
}

double xi_levy_density(const SubordinatorModel& model, double x) {
  if (model.is_cp_exp()) return levy_density(model, x);
  const auto& p = model.trunc_norm_params();
  const double scale = -std::log(p.q);
  return levy_density(model, x / scale) / scale;
}

Complex laplace_exponent(const SubordinatorModel& model, Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("laplace_exponent: non-finite argument");
  }
  return std::visit(
      Overloaded{
          [z](const CpExpParams& p) -> Complex {
            if (z == Complex(-p.b, 0.0)) throw PoleError("laplace_exponent: pole at z = -b");
            if (z.real() <= -p.b) {
              std::ostringstream msg;
              msg << "laplace_exponent: Re z must exceed -b = " << -p.b << ", got " << z;
              throw DomainError(msg.str());
            }
            return z * (p.mu + p.a / (p.b + z));
          },
          [z](const TruncNormCpParams& p) -> Complex {
            if (z.real() < 0.0) {
              std::ostringstream msg;
              msg << "laplace_exponent: Re z must be >= 0, got " << z;
              throw DomainError(msg.str());
            }
            // E[q^{z eta}] = e^{L^2 z^2/2} (1 - F(alpha - L z)) / (1 - F(alpha)), L = log q,
            // rewritten through erfcx so that large Re z neither overflows nor underflows.
            const double log_q = std::log(p.q);
            const Complex s = (p.alpha - log_q * z) / std::numbers::sqrt2;
            const Complex moment = special::erfcx(s) *
                                   std::exp(p.alpha * log_q * z - 0.5 * p.alpha * p.alpha) /
                                   std::erfc(p.alpha / std::numbers::sqrt2);
            return p.lambda * (1.0 - moment);
          }},
      model.params());
}

SubordinatorModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("model") || !j["model"].is_string()) {
    throw ConfigError("model config needs a string field \"model\"");
  }
  const auto get = [&j](const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw ConfigError(std::string("model config missing numeric field \"") + key + "\"");
    }
    return j[key].get<double>();
  };
  const auto name = j["model"].get<std::string>();
  if (name == "cp_exp") return SubordinatorModel::cp_exp(get("mu"), get("a"), get("b"));
  if (name == "trunc_norm_cp") {
    return SubordinatorModel::trunc_norm_cp(get("lambda"), get("q"), get("alpha"));
  }
  throw ConfigError("unknown model \"" + name + "\" (expected cp_exp or trunc_norm_cp)");
}

nlohmann::json model_to_json(const SubordinatorModel& model) {
  return std::visit(
      Overloaded{[](const CpExpParams& p) {
                   return nlohmann::json{{"model", "cp_exp"}, {"mu", p.mu}, {"a", p.a}, {"b", p.b}};
                 },
                 [](const TruncNormCpParams& p) {
                   return nlohmann::json{
                       {"model", "trunc_norm_cp"}, {"lambda", p.lambda}, {"q", p.q}, {"alpha", p.alpha}};
                 }},
      model.params());
}

}  // namespace gouest
