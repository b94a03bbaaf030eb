// End-to-end checks of the gouest executable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "gouest_cli_tests";

int run(const std::string& args) {
  const std::string cmd = std::string(GOUEST_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

std::vector<std::vector<double>> csv_rows(const fs::path& p, std::string* header = nullptr) {
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream fields(line);
    std::string f;
    while (std::getline(fields, f, ',')) row.push_back(std::stod(f));
    rows.push_back(row);
  }
  return rows;
}

std::string dir(const std::string& name) {
  const auto d = kRoot / name;
  fs::remove_all(d);
  return d.string();
}

}  // namespace

TEST_CASE("simulate writes a deterministic sample") {
  const auto a = dir("sim_a"), b = dir("sim_b");
  REQUIRE(run("simulate --n 10000 --seed 5 --out " + a) == 0);
  REQUIRE(run("simulate --n 10000 --seed 5 --out " + b) == 0);
  const auto text = slurp(fs::path(a) / "sample.csv");
  CHECK(std::count(text.begin(), text.end(), '\n') == 10001);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text == slurp(fs::path(b) / "sample.csv"));
  CHECK(slurp(fs::path(a) / "sample.json") == slurp(fs::path(b) / "sample.json"));
  const auto manifest = load(fs::path(a) / "manifest.json");
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["outputs"].size() == 3);
  CHECK(manifest["exit_code"] == 0);
}

TEST_CASE("simulate rejects invalid parameters with exit 2 and a manifest") {
  const auto d = dir("sim_bad");
  CHECK(run("simulate --mu -1 --out " + d) == 2);
  const auto manifest = load(fs::path(d) / "manifest.json");
  CHECK(manifest["status"] == "error");
  CHECK(manifest["exit_code"] == 2);
  CHECK(run("simulate --model stable --out " + d) == 2);
  CHECK(run("simulate --n notanumber --out " + d) == 2);
}

TEST_CASE("config file values apply and flags win") {
  const auto d = dir("sim_cfg");
  fs::create_directories(d);
  const auto cfg = fs::path(d) / "cfg.json";
  std::ofstream(cfg) << R"({"model": {"model": "trunc_norm_cp", "lambda": 2.0}, "n": 50, "seed": 3})";
  REQUIRE(run("simulate --config " + cfg.string() + " --n 20 --out " + d) == 0);
  const auto meta = load(fs::path(d) / "sample.json");
  CHECK(meta["n"] == 20);
  CHECK(meta["seed"] == 3);
  CHECK(meta["model"]["lambda"] == 2.0);
  CHECK(meta["model"]["q"] == 0.5);
}

TEST_CASE("estimate produces triplet, curve and density") {
  const auto s = dir("est_sample"), e = dir("est_out");
  REQUIRE(run("simulate --n 10000 --seed 1 --out " + s) == 0);
  REQUIRE(run("estimate --sample " + s + "/sample.csv --u0 29 --vn 30 --x-points 11 --out " + e) ==
          0);
  const auto t = load(fs::path(e) / "triplet.json");
  CHECK(std::abs(t["mu_hat"].get<double>() - 1.8) < 0.05);
  CHECK(t.contains("lambda_hat"));
  std::string header;
  CHECK(csv_rows(fs::path(e) / "levy_density.csv", &header).size() == 11);
  CHECK(header == "x,nu_hat,nu_bar_hat,imag_residual");
  CHECK(csv_rows(fs::path(e) / "laplace_curve.csv", &header).size() == 201);
  CHECK(header == "v,re_Y,im_Y,abs_Y,denom_abs,ill_flag");
}

TEST_CASE("estimate input errors") {
  const auto d = dir("est_bad");
  fs::create_directories(d);
  std::ofstream(fs::path(d) / "empty.csv") << "";
  std::ofstream(fs::path(d) / "neg.csv") << "x\n0.5\n-0.1\n";
  std::ofstream(fs::path(d) / "const.csv") << "x\n0.5\n0.5\n0.5\n0.5\n";
  CHECK(run("estimate --sample " + d + "/empty.csv --out " + d + "/o1") == 2);
  CHECK(run("estimate --sample " + d + "/neg.csv --out " + d + "/o2") == 2);
  CHECK(run("estimate --sample " + d + "/missing.csv --out " + d + "/o3") == 4);
  CHECK(run("estimate --sample " + d + "/const.csv --weight gauss --out " + d + "/o4") == 2);
  REQUIRE(run("estimate --sample " + d + "/const.csv --out " + d + "/o5") == 0);
  const auto t = load(fs::path(d) / "o5" / "triplet.json");
  CHECK(t["ill_conditioned"].get<int>() == t["grid_points"].get<int>());
}

TEST_CASE("unwritable output directory is exit 4") {
  const auto d = dir("blocker");
  fs::create_directories(kRoot);
  std::ofstream(kRoot / "blocker") << "file";
  CHECK(run("simulate --n 10 --out " + (kRoot / "blocker" / "sub").string()) == 4);
  fs::remove(kRoot / "blocker");
}

TEST_CASE("experiment1 emits figure data") {
  const auto a = dir("exp1_a"), b = dir("exp1_b");
  REQUIRE(run("experiment1 --seed 2 --out " + a) == 0);
  std::string header;
  const auto fig1 = csv_rows(fs::path(a) / "fig1_laplace.csv", &header);
  CHECK(header == "v,re_Y,im_Y,abs_Y,denom_abs,ill_flag,re_phi,im_phi,abs_phi");
  REQUIRE(fig1.size() == 121);
  CHECK(fig1.front()[0] == -30.0);
  CHECK(fig1.back()[0] == 30.0);
  CHECK(fig1[60][0] == 0.0);
  CHECK(fig1[60][6] == doctest::Approx(29.0 * (1.8 + 0.7 / 29.2)).epsilon(1e-14));
  const auto fig2 = csv_rows(fs::path(a) / "fig2_estimates.csv", &header);
  CHECK(header == "n,replicate,seed,mu_hat,lambda_hat,ill_conditioned");
  REQUIRE(fig2.size() == 75);
  for (double n : {1e3, 1e4, 1e5}) {
    CHECK(std::count_if(fig2.begin(), fig2.end(), [n](const auto& r) { return r[0] == n; }) == 25);
  }
  REQUIRE(run("experiment1 --seed 2 --out " + b) == 0);
  CHECK(slurp(fs::path(a) / "fig2_estimates.csv") == slurp(fs::path(b) / "fig2_estimates.csv"));
  CHECK(load(fs::path(a) / "manifest.json")["config"]["fig1"]["n"] == 10000);
}

TEST_CASE("experiment2 emits figure data") {
  const auto d = dir("exp2");
  REQUIRE(run("experiment2 --seed 3 --out " + d) == 0);
  std::string header;
  const auto fig3 = csv_rows(fs::path(d) / "fig3_laplace.csv", &header);
  CHECK(fig3.front()[0] == -5.0);
  CHECK(fig3.back()[0] == 5.0);
  const auto fig4 = csv_rows(fs::path(d) / "fig4_density.csv", &header);
  CHECK(header == "x,nu_hat,nu_bar_hat,imag_residual,nu_true,nu_xi_true");
  // lambda p(x) / (1 - F(alpha)) for x > alpha, 0 below
  const double tail = 0.5 * std::erfc(0.1 / std::sqrt(2.0));
  for (const auto& r : fig4) {
    const double x = r[0];
    const double want = x > 0.1 ? std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI) / tail : 0.0;
    CHECK(r[4] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("rate-study writes the report and validates the ladder") {
  const auto d = dir("rate");
  fs::create_directories(d);
  const auto cfg = fs::path(d) / "cfg.json";
  std::ofstream(cfg) << R"({"study": {"ladder": []}})";
  CHECK(run("rate-study --config " + cfg.string() + " --out " + d + "/bad") == 2);
  REQUIRE(run("rate-study --ladder 300,1000 --replicates 3 --x-points 21 --out " + d + "/ok") == 0);
  const auto r = load(fs::path(d) / "ok" / "mise_report.json");
  for (const char* key : {"n", "median_sq_err_mu", "median_sq_err_lambda", "median_mise",
                          "slope_mu", "slope_mise"}) {
    CHECK(r.contains(key));
  }
  CHECK(r["n"].size() == 2);
}
