// gouest: simulate GOU stationary samples, estimate the Levy triplet, and
// regenerate the simulation-study figure data.
//
// Exit codes: 0 ok, 2 input/config, 3 numerical degeneracy, 4 IO.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gouest/errors.hpp"
#include "gouest/estimators.hpp"
#include "gouest/io.hpp"
#include "gouest/mellin.hpp"
#include "gouest/models.hpp"
#include "gouest/rates.hpp"
#include "gouest/rng.hpp"
#include "gouest/sampling.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gouest;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct CommonFlags {
  std::uint64_t seed = 1;
  std::string out = ".";
  std::string config;
  CLI::Option* seed_opt = nullptr;
};

struct ModelFlags {
  std::string model;
  double mu = 0, a = 0, b = 0, lambda = 0, q = 0, alpha = 0;
  std::vector<std::pair<std::string, CLI::Option*>> numeric;
  CLI::Option* model_opt = nullptr;

  void attach(CLI::App* app) {
    model_opt = app->add_option("--model", model, "cp_exp or trunc_norm_cp");
    numeric = {{"mu", app->add_option("--mu", mu, "drift (cp_exp)")},
               {"a", app->add_option("--a", a, "jump intensity (cp_exp)")},
               {"b", app->add_option("--b", b, "exponential jump rate (cp_exp)")},
               {"lambda", app->add_option("--lambda", lambda, "jump intensity (trunc_norm_cp)")},
               {"q", app->add_option("--q", q, "contraction factor (trunc_norm_cp)")},
               {"alpha", app->add_option("--alpha", alpha, "normal truncation point (trunc_norm_cp)")}};
  }

  double value(const std::string& key) const {
    if (key == "mu") return mu;
    if (key == "a") return a;
    if (key == "b") return b;
    if (key == "lambda") return lambda;
    if (key == "q") return q;
    return alpha;
  }
};

struct EstimationFlags {
  double u0 = 0, vn = 0, eps = 0, floor = 0, x_min = 0, x_max = 0;
  std::size_t grid_m = 0, density_grid_m = 0, x_points = 0;
  std::string weight, kernel;
  bool positive_part = false;
  CLI::Option *u0_opt, *vn_opt, *eps_opt, *floor_opt, *grid_opt, *dgrid_opt, *weight_opt,
      *kernel_opt, *pos_opt;
  CLI::Option *x_min_opt, *x_max_opt, *x_points_opt;

  void attach(CLI::App* app) {
    u0_opt = app->add_option("--u0", u0, "real part of the evaluation line");
    vn_opt = app->add_option("--vn", vn, "spectral cutoff V_n");
    eps_opt = app->add_option("--eps", eps, "lower end of the one-sided grid");
    grid_opt = app->add_option("--grid-m", grid_m, "grid count for mu and lambda");
    dgrid_opt = app->add_option("--density-grid-m", density_grid_m, "grid count for the density");
    weight_opt = app->add_option("--weight", weight, "flat or epanechnikov");
    kernel_opt = app->add_option("--kernel", kernel, "flat_top");
    floor_opt = app->add_option("--floor", floor, "ill-conditioning floor for |M_n(z+1)|");
    pos_opt = app->add_flag("--positive-part", positive_part, "clip the density at 0");
    x_min_opt = app->add_option("--x-min", x_min, "density grid start");
    x_max_opt = app->add_option("--x-max", x_max, "density grid end");
    x_points_opt = app->add_option("--x-points", x_points, "density grid size");
  }
};

struct XGrid {
  double x_min = 0.0;
  double x_max = 3.0;
  std::size_t points = 301;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  json j = io::read_json(path);
  if (!j.is_object()) throw ConfigError(path + ": config must be a JSON object");
  return j;
}

json default_model_json(const std::string& name) {
  if (name == "cp_exp") return {{"model", "cp_exp"}, {"mu", 1.8}, {"a", 0.7}, {"b", 0.2}};
  if (name == "trunc_norm_cp") {
    return {{"model", "trunc_norm_cp"}, {"lambda", 1.0}, {"q", 0.5}, {"alpha", 0.1}};
  }
  throw ConfigError("unknown model \"" + name + "\" (expected cp_exp or trunc_norm_cp)");
}

SubordinatorModel resolve_model(const json& cfg, const ModelFlags& flags,
                                const std::string& fallback) {
  std::string name = fallback;
  if (cfg.contains("model") && cfg["model"].contains("model")) {
    name = cfg["model"]["model"].get<std::string>();
  }
  if (flags.model_opt->count() > 0) name = flags.model;
  json j = default_model_json(name);
  if (cfg.contains("model") && cfg["model"].value("model", name) == name) {
    for (const auto& [key, val] : cfg["model"].items()) j[key] = val;
  }
  for (const auto& [key, opt] : flags.numeric) {
    if (opt->count() > 0) j[key] = flags.value(key);
  }
  return model_from_json(j);
}

template <class T>
void take(const json& j, const char* key, T& target) {
  if (j.contains(key)) target = j[key].get<T>();
}

EstimationConfig resolve_estimation(const json& cfg, const EstimationFlags& f,
                                    EstimationConfig config) {
  if (cfg.contains("estimation")) {
    const json& e = cfg["estimation"];
    take(e, "u0", config.u0);
    take(e, "vn", config.vn);
    take(e, "eps", config.eps);
    take(e, "grid_m", config.grid_m);
    take(e, "density_grid_m", config.density_grid_m);
    take(e, "positive_part", config.positive_part);
    if (e.contains("weight")) config.weight = parse_weight(e["weight"].get<std::string>());
    if (e.contains("kernel")) config.kernel.kind = parse_kernel(e["kernel"].get<std::string>());
    if (e.contains("floor") && e["floor"].is_number()) config.floor = e["floor"].get<double>();
  }
  if (f.u0_opt->count()) config.u0 = f.u0;
  if (f.vn_opt->count()) config.vn = f.vn;
  if (f.eps_opt->count()) config.eps = f.eps;
  if (f.grid_opt->count()) config.grid_m = f.grid_m;
  if (f.dgrid_opt->count()) config.density_grid_m = f.density_grid_m;
  if (f.weight_opt->count()) config.weight = parse_weight(f.weight);
  if (f.kernel_opt->count()) config.kernel.kind = parse_kernel(f.kernel);
  if (f.floor_opt->count()) config.floor = f.floor;
  if (f.pos_opt->count()) config.positive_part = f.positive_part;
  config.validate();
  return config;
}

XGrid resolve_x_grid(const json& cfg, const EstimationFlags& f, XGrid grid) {
  take(cfg, "x_min", grid.x_min);
  take(cfg, "x_max", grid.x_max);
  take(cfg, "x_points", grid.points);
  if (f.x_min_opt->count()) grid.x_min = f.x_min;
  if (f.x_max_opt->count()) grid.x_max = f.x_max;
  if (f.x_points_opt->count()) grid.points = f.x_points;
  if (!(grid.x_max > grid.x_min) || grid.points < 2) {
    throw ConfigError("x-grid needs x_max > x_min and at least 2 points");
  }
  return grid;
}

std::uint64_t resolve_seed(const json& cfg, const CommonFlags& common) {
  std::uint64_t seed = common.seed;
  if (common.seed_opt->count() == 0) take(cfg, "seed", seed);
  return seed;
}

std::size_t resolve_n(const json& cfg, CLI::Option* opt, std::size_t flag_value,
                      std::size_t fallback) {
  std::size_t n = fallback;
  take(cfg, "n", n);
  if (opt->count()) n = flag_value;
  if (n == 0) throw ConfigError("sample size n must be >= 1");
  return n;
}

json x_grid_json(const XGrid& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"x_points", g.points}};
}

// Collects output paths for the manifest as files are written.
class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {}

  void ensure() {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  void text(const std::string& name, const std::string& body) {
    io::write_text(dir_ / name, body);
    written_.push_back((dir_ / name).string());
  }

  void json_file(const std::string& name, const json& j) { text(name, j.dump(2) + "\n"); }

  const fs::path& dir() const { return dir_; }
  const std::vector<std::string>& written() const { return written_; }

 private:
  fs::path dir_;
  std::vector<std::string> written_;
};

std::string curve_csv(const LaplaceCurve& curve, const std::vector<Complex>* phi) {
  std::ostringstream base;
  write_csv(curve, base);
  if (phi == nullptr) return base.str();
  std::istringstream lines(base.str());
  std::ostringstream out;
  out << std::setprecision(17);
  std::string line;
  std::getline(lines, line);
  out << line << ",re_phi,im_phi,abs_phi\n";
  for (std::size_t i = 0; std::getline(lines, line); ++i) {
    const Complex p = (*phi)[i];
    out << line << ',' << p.real() << ',' << p.imag() << ',' << std::abs(p) << '\n';
  }
  return out.str();
}

std::vector<Complex> phi_on_line(const SubordinatorModel& model, double u0,
                                 std::span<const double> v) {
  std::vector<Complex> out;
  out.reserve(v.size());
  for (double vi : v) out.push_back(laplace_exponent(model, Complex(u0, vi)));
  return out;
}

struct Context {
  io::RunManifest manifest;
  OutputDir out;
};

// ---- simulate ------------------------------------------------------------

struct SimulateFlags {
  ModelFlags model;
  std::size_t n = 10000;
  CLI::Option* n_opt = nullptr;
};

void cmd_simulate(const CommonFlags& common, const SimulateFlags& f, Context& ctx) {
  const json cfg = load_config(common.config);
  const auto model = resolve_model(cfg, f.model, "cp_exp");
  const std::size_t n = resolve_n(cfg, f.n_opt, f.n, 10000);
  const std::uint64_t seed = resolve_seed(cfg, common);
  ctx.manifest.config = {{"model", model_to_json(model)}, {"n", n}, {"seed", seed}};
  ctx.manifest.seeds = {seed};
  const Sample sample = sample_model(model, n, seed);
  ctx.out.ensure();
  ctx.out.text("sample.csv", io::sample_csv(sample));
  ctx.out.json_file("sample.json", io::sample_metadata(sample, model_to_json(model)));
}

// ---- estimate --------------------------------------------------------------

struct EstimateFlags {
  std::string sample;
  EstimationFlags est;
};

void cmd_estimate(const CommonFlags& common, const EstimateFlags& f, Context& ctx) {
  const json cfg = load_config(common.config);
  std::string path = f.sample;
  if (path.empty()) take(cfg, "sample", path);
  if (path.empty()) throw ConfigError("estimate needs --sample (or \"sample\" in the config)");
  const auto config = resolve_estimation(cfg, f.est, EstimationConfig{});
  const auto grid = resolve_x_grid(cfg, f.est, XGrid{});
  ctx.manifest.config = {{"sample", path}, {"estimation", to_json(config)},
                         {"x_grid", x_grid_json(grid)}};
  const Sample sample = io::read_sample_csv(path);
  ctx.manifest.config["n"] = sample.size();

  const auto x = linspace(grid.x_min, grid.x_max, grid.points);
  const auto result = run_algorithm2_full(sample, config, x);
  json triplet = to_json(result.triplet);
  triplet["n"] = sample.size();
  triplet["density_grid_ill_conditioned"] = result.curve.ill_count();

  ctx.out.ensure();
  ctx.out.json_file("triplet.json", triplet);
  ctx.out.text("laplace_curve.csv", curve_csv(result.curve, nullptr));
  std::ostringstream density;
  write_csv(result.density, density);
  ctx.out.text("levy_density.csv", density.str());
}

// ---- experiment 1: Beta case, Figures 1 and 2 ------------------------------

struct ExperimentFlags {
  std::size_t n = 10000;
  CLI::Option* n_opt = nullptr;
};

void cmd_experiment1(const CommonFlags& common, const ExperimentFlags& f, Context& ctx) {
  const json cfg = load_config(common.config);
  const std::uint64_t seed = resolve_seed(cfg, common);
  const std::size_t n = resolve_n(cfg, f.n_opt, f.n, 10000);
  const auto model = SubordinatorModel::cp_exp(1.8, 0.7, 0.2);
  EstimationConfig config;
  config.u0 = 29.0;
  config.vn = 30.0;
  config.eps = 0.1;
  config.grid_m = 50;
  const std::vector<std::size_t> ladder{1000, 10000, 100000};
  constexpr std::size_t replicates = 25;
  ctx.manifest.config = {{"model", model_to_json(model)},
                         {"estimation", to_json(config)},
                         {"fig1", {{"n", n}, {"v_min", -30.0}, {"v_max", 30.0}, {"v_points", 121}}},
                         {"fig2", {{"n", ladder}, {"replicates", replicates}}}};
  ctx.manifest.seeds = {seed};

  ctx.out.ensure();
  const Sample sample = sample_model(model, n, derive_seed(seed, 0));
  const auto v = linspace(-30.0, 30.0, 121);
  const auto curve = laplace_curve(sample, config.u0, v, config.floor);
  const auto phi = phi_on_line(model, config.u0, v);
  ctx.out.text("fig1_laplace.csv", curve_csv(curve, &phi));

  std::ostringstream fig2;
  fig2 << std::setprecision(17) << "n,replicate,seed,mu_hat,lambda_hat,ill_conditioned\n";
  for (std::size_t size : ladder) {
    const std::uint64_t rung = derive_seed(seed, size);
    for (std::size_t r = 0; r < replicates; ++r) {
      const std::uint64_t s = derive_seed(rung, r);
      const auto t = run_algorithm1(sample_model(model, size, s), config);
      fig2 << size << ',' << r << ',' << s << ',' << t.mu_hat << ',' << t.lambda_hat << ','
           << t.ill_conditioned << '\n';
    }
  }
  ctx.out.text("fig2_estimates.csv", fig2.str());
}

// ---- experiment 2: truncated-normal case, Figures 3 and 4 ------------------

void cmd_experiment2(const CommonFlags& common, const ExperimentFlags& f, Context& ctx) {
  const json cfg = load_config(common.config);
  const std::uint64_t seed = resolve_seed(cfg, common);
  const std::size_t n = resolve_n(cfg, f.n_opt, f.n, 10000);
  const auto model = SubordinatorModel::trunc_norm_cp(1.0, 0.5, 0.1);
  EstimationConfig config;
  config.u0 = 1.0;
  config.vn = 5.0;
  config.density_grid_m = 200;
  const XGrid grid{0.0, 3.0, 301};
  ctx.manifest.config = {{"model", model_to_json(model)},
                         {"n", n},
                         {"estimation", to_json(config)},
                         {"x_grid", x_grid_json(grid)},
                         {"fig3", {{"v_min", -5.0}, {"v_max", 5.0}, {"v_points", 101}}}};
  ctx.manifest.seeds = {seed};

  ctx.out.ensure();
  const Sample sample = sample_model(model, n, derive_seed(seed, 0));
  const auto v = linspace(-5.0, 5.0, 101);
  const auto curve = laplace_curve(sample, config.u0, v, config.floor);
  const auto phi = phi_on_line(model, config.u0, v);
  ctx.out.text("fig3_laplace.csv", curve_csv(curve, &phi));

  const auto x = linspace(grid.x_min, grid.x_max, grid.points);
  const auto result = run_algorithm2_full(sample, config, x);
  const auto& d = result.density;
  std::ostringstream fig4;
  fig4 << std::setprecision(17) << "x,nu_hat,nu_bar_hat,imag_residual,nu_true,nu_xi_true\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    fig4 << d.x[i] << ',' << d.nu_hat[i] << ',' << d.nu_bar_hat[i] << ',' << d.imag_residual[i]
         << ',' << levy_density(model, d.x[i]) << ',' << xi_levy_density(model, d.x[i]) << '\n';
  }
  ctx.out.text("fig4_density.csv", fig4.str());
  json triplet = to_json(result.triplet);
  triplet["n"] = n;
  ctx.out.json_file("fig4_triplet.json", triplet);
}

// ---- rate study ------------------------------------------------------------

struct RateFlags {
  ModelFlags model;
  EstimationFlags est;
  int s = 0;
  double beta = 0, alpha_decay = 0, radius = 0;
  std::string decay;
  std::size_t replicates = 0;
  std::vector<std::size_t> ladder;
  bool no_mise = false;
  CLI::Option *s_opt, *beta_opt, *alpha_opt, *radius_opt, *decay_opt, *rep_opt, *ladder_opt;
};

void cmd_rate_study(const CommonFlags& common, const RateFlags& f, Context& ctx) {
  const json cfg = load_config(common.config);
  const auto model = resolve_model(cfg, f.model, "cp_exp");
  EstimationConfig base;
  base.u0 = 29.0;
  base.vn = 1.0;  // replaced per rung by the bandwidth rule
  const auto config = resolve_estimation(cfg, f.est, base);

  RateStudyConfig study;
  study.seed = resolve_seed(cfg, common);
  study.beta = 0.7 / 1.8;
  const json sj = cfg.value("study", json::object());
  take(sj, "s", study.s);
  take(sj, "beta", study.beta);
  take(sj, "alpha", study.alpha);
  take(sj, "radius", study.radius);
  take(sj, "replicates", study.replicates);
  take(sj, "ladder", study.ladder);
  std::string decay = sj.value("class", std::string("polynomial"));
  if (f.s_opt->count()) study.s = f.s;
  if (f.beta_opt->count()) study.beta = f.beta;
  if (f.alpha_opt->count()) study.alpha = f.alpha_decay;
  if (f.radius_opt->count()) study.radius = f.radius;
  if (f.rep_opt->count()) study.replicates = f.replicates;
  if (f.ladder_opt->count()) study.ladder = f.ladder;
  if (f.decay_opt->count()) decay = f.decay;
  if (decay == "polynomial") {
    study.decay = DecayClass::Polynomial;
  } else if (decay == "exponential") {
    study.decay = DecayClass::Exponential;
  } else {
    throw ConfigError("unknown decay class \"" + decay + "\" (expected polynomial or exponential)");
  }
  const auto grid = resolve_x_grid(cfg, f.est, XGrid{});
  study.x_min = grid.x_min;
  study.x_max = grid.x_max;
  study.x_points = grid.points;
  study.compute_mise = !f.no_mise;

  ctx.manifest.config = {{"model", model_to_json(model)},
                         {"estimation", to_json(config)},
                         {"study",
                          {{"s", study.s},
                           {"beta", study.beta},
                           {"alpha", study.alpha},
                           {"class", decay},
                           {"radius", study.radius},
                           {"replicates", study.replicates},
                           {"ladder", study.ladder},
                           {"compute_mise", study.compute_mise}}},
                         {"x_grid", x_grid_json(grid)}};
  ctx.manifest.seeds = {study.seed};
  study.validate();
  for (std::size_t n : study.ladder) study.bandwidth(n);

  const MiseReport report = rate_study(study, model, config);
  json j = to_json(report);
  j["radius"] = study.radius;
  ctx.out.ensure();
  ctx.out.json_file("mise_report.json", j);
}

int exit_code_for(const std::exception_ptr& e, std::string& message) {
  try {
    std::rethrow_exception(e);
  } catch (const IoError& err) {
    message = err.what();
    return kExitIo;
  } catch (const DegenerateWeights& err) {
    message = err.what();
    return kExitNumeric;
  } catch (const TruncationError& err) {
    message = err.what();
    return kExitNumeric;
  } catch (const AccuracyError& err) {
    message = err.what();
    return kExitNumeric;
  } catch (const Error& err) {
    message = err.what();
    return kExitInput;
  } catch (const json::exception& err) {
    message = std::string("config: ") + err.what();
    return kExitInput;
  } catch (const std::exception& err) {
    message = err.what();
    return kExitNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonparametric estimation for generalized Ornstein-Uhlenbeck processes"};
  app.set_version_flag("--version", io::library_version());
  app.require_subcommand(1);

  CommonFlags common;
  const auto add_common = [&common](CLI::App* sub) {
    common.seed_opt = sub->add_option("--seed", common.seed, "RNG seed");
    sub->add_option("--out", common.out, "output directory")->capture_default_str();
    sub->add_option("--config", common.config, "JSON config; flags win on conflict");
  };

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "draw a stationary sample");
  add_common(simulate);
  sim.model.attach(simulate);
  sim.n_opt = simulate->add_option("--n", sim.n, "sample size");

  EstimateFlags est;
  auto* estimate = app.add_subcommand("estimate", "estimate the Levy triplet of a sample");
  add_common(estimate);
  estimate->add_option("--sample", est.sample, "sample CSV (column x)");
  est.est.attach(estimate);

  ExperimentFlags exp1;
  auto* experiment1 = app.add_subcommand("experiment1", "Beta case: Laplace curve and boxplot data");
  add_common(experiment1);
  exp1.n_opt = experiment1->add_option("--n", exp1.n, "sample size for the Laplace curve");

  ExperimentFlags exp2;
  auto* experiment2 =
      app.add_subcommand("experiment2", "truncated-normal case: Laplace curve and density");
  add_common(experiment2);
  exp2.n_opt = experiment2->add_option("--n", exp2.n, "sample size");

  RateFlags rf;
  auto* rate = app.add_subcommand("rate-study", "Monte-Carlo convergence rates");
  add_common(rate);
  rf.model.attach(rate);
  rf.est.attach(rate);
  rf.s_opt = rate->add_option("--s", rf.s, "smoothness index");
  rf.beta_opt = rate->add_option("--beta", rf.beta, "polynomial decay exponent");
  rf.alpha_opt = rate->add_option("--decay-alpha", rf.alpha_decay, "exponential decay rate");
  rf.radius_opt = rate->add_option("--radius", rf.radius, "class radius (recorded only)");
  rf.decay_opt = rate->add_option("--class", rf.decay, "polynomial or exponential");
  rf.rep_opt = rate->add_option("--replicates", rf.replicates, "replicates per sample size");
  rf.ladder_opt = rate->add_option("--ladder", rf.ladder, "sample sizes")->delimiter(',');
  rate->add_flag("--no-mise", rf.no_mise, "skip the density step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  common.seed_opt = sub->get_option("--seed");
  Context ctx{io::RunManifest{}, OutputDir(common.out)};
  ctx.manifest.command = sub->get_name();
  ctx.manifest.started = io::utc_timestamp();

  int code = kExitOk;
  try {
    if (sub == simulate) cmd_simulate(common, sim, ctx);
    if (sub == estimate) cmd_estimate(common, est, ctx);
    if (sub == experiment1) cmd_experiment1(common, exp1, ctx);
    if (sub == experiment2) cmd_experiment2(common, exp2, ctx);
    if (sub == rate) cmd_rate_study(common, rf, ctx);
  } catch (...) {
    code = exit_code_for(std::current_exception(), ctx.manifest.message);
    std::cerr << "gouest " << ctx.manifest.command << ": " << ctx.manifest.message << '\n';
  }

  ctx.manifest.status = code == kExitOk ? "ok" : "error";
  ctx.manifest.exit_code = code;
  ctx.manifest.outputs = ctx.out.written();
  ctx.manifest.outputs.push_back((ctx.out.dir() / "manifest.json").string());
  ctx.manifest.finished = io::utc_timestamp();
  try {
    std::error_code ec;
    fs::create_directories(ctx.out.dir(), ec);
    io::write_json(ctx.out.dir() / "manifest.json", ctx.manifest.to_json());
  } catch (const IoError& e) {
    std::cerr << "gouest: " << e.what() << '\n';
    if (code == kExitOk) code = kExitIo;
  }
  return code;
}
