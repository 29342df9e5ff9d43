#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "lowmach/sweep.hpp"

namespace lowmach {

nlohmann::json to_json(const SweepConfig& cfg);
/// Inverse of to_json; missing keys keep their defaults, unknown keys throw
/// ConfigError.
SweepConfig sweep_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ModulatedReport& r);
nlohmann::json to_json(const EpsilonResult& r);
nlohmann::json to_json(const RateReport& r);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);
/// 16 hex digits of the hash of the compact, key-sorted config document.
std::string config_hash(const SweepConfig& cfg);

struct ReportPaths {
  std::filesystem::path json;
  std::filesystem::path table;
};

/// Writes sweep-<hash>.json and sweep-<hash>.dat into `dir` (created if
/// needed). The table has one header line and space-separated columns.
ReportPaths write_rate_report(const RateReport& r, const std::filesystem::path& dir);

/// Reads a JSON document; throws Error(Io) on failure.
nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace lowmach
