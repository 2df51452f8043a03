#pragma once

#include "parspec/grid.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace parspec {

// 64-bit FNV-1a, used as the content hash of emitted reports.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::string_view bytes);  // "fnv1a64:" + 16 hex digits

// Writes to a sibling temporary file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// Flat binary field file. Header (little-endian): magic "PSFIELD1", int32 dim,
// int32 points[3], float64 length[3], int32 components, int32 layout (0 = row
// major, axis 0 slowest). Payload: float64 physical values, component after
// component. A JSON sidecar at path + ".json" repeats the header and carries
// `meta` plus the payload hash.
void write_field(const std::filesystem::path& path, const Field& f, const nlohmann::json& meta = nlohmann::json::object());
Field read_field(const std::filesystem::path& path);
nlohmann::json read_field_sidecar(const std::filesystem::path& path);

}  // namespace parspec
