#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

namespace stylecast {

inline constexpr int kFormatVersion = 1;

// Loads and parses a JSON file; DataError carries the path on failure.
nlohmann::json load_json_file(const std::filesystem::path& path);

// Serializes with 2-space indent plus trailing newline, writing through a
// temp file and rename so readers never see partial output.
void save_json_atomic(const nlohmann::json& j, const std::filesystem::path& path);

// Checks j["format_version"] == kFormatVersion.
void require_format_version(const nlohmann::json& j, const std::string& what);

// Hex FNV-1a of a file's bytes, for run manifests.
std::string file_digest_hex(const std::filesystem::path& path);

void write_text_atomic(const std::string& text, const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace stylecast
