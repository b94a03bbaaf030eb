#include "gouest/io.hpp"

#include <charconv>
#include <cmath>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "gouest/errors.hpp"

#ifndef GOUEST_VERSION
#define GOUEST_VERSION "0.0.0"
#endif

namespace gouest::io {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string sample_csv(const Sample& sample) {
  std::ostringstream out;
  out << std::setprecision(17) << "x\n";
  for (double x : sample.values()) out << x << '\n';
  return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

}  // namespace

Sample read_sample_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view field = line;
    field = trim(field.substr(0, field.find(',')));
    if (field.empty()) continue;
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      if (values.empty() && line_no == 1) continue;  // header
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": not a number: " +
                        std::string(field));
    }
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError(path.string() + ":" + std::to_string(line_no) +
                        ": observations must be positive and finite");
    }
    values.push_back(x);
  }
  if (values.empty()) throw ConfigError(path.string() + ": sample is empty");
  return Sample(std::move(values));
}

nlohmann::json sample_metadata(const Sample& sample, const nlohmann::json& model) {
  return {{"model", model},
          {"n", sample.size()},
          {"seed", sample.seed()},
          {"spacing", sample.spacing()}};
}

nlohmann::json RunManifest::to_json() const {
  return {{"command", command},
          {"config", config},
          {"seeds", seeds},
          {"started", started},
          {"finished", finished},
          {"outputs", outputs},
          {"status", status},
          {"exit_code", exit_code},
          {"message", message},
          {"version", library_version()}};
}

std::string utc_timestamp() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::string library_version() { return GOUEST_VERSION; }

}  // namespace gouest::io
