#pragma once

// File formats: sample CSV (single column `x`) with a sibling metadata JSON,
// and the run manifest written by every CLI command.

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "gouest/sampling.hpp"

namespace gouest::io {

/// Writes text with LF line endings; IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Pretty-printed JSON with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);

std::string sample_csv(const Sample& sample);

/// Reads a sample CSV. The header row is optional; only the first field of
/// each line is used. IoError if the file cannot be opened, ConfigError on
/// unparsable or empty input, DomainError on nonpositive values.
Sample read_sample_csv(const std::filesystem::path& path);

/// {"model":..., "n":..., "seed":..., "spacing":...}
nlohmann::json sample_metadata(const Sample& sample, const nlohmann::json& model);

struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::uint64_t> seeds;
  std::string started;
  std::string finished;
  std::vector<std::string> outputs;
  std::string status = "ok";
  int exit_code = 0;
  std::string message;

  nlohmann::json to_json() const;
};

/// UTC time, ISO 8601 with seconds.
std::string utc_timestamp();

std::string library_version();

}  // namespace gouest::io
