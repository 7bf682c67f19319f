#pragma once

// Serialization helpers shared by the CLI: hashing, JSON and CSV writers,
// and the binary word-ball cache.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "anosov/groups.hpp"
#include "anosov/linalg.hpp"

namespace anosov::io {

inline constexpr const char* kLibraryVersion = "0.1.0";

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// printf %.17g, which round-trips every finite double.
std::string format_double(double x);

/// Hash of the generating set (exact keys when rational, %.17g entries otherwise).
std::string group_hash(const groups::GroupSpec& spec);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Vector& v);

/// Reads and parses a JSON file, mapping failures to IoError / ParseError.
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Writes `text` and returns its content hash.
std::string write_text(const std::filesystem::path& path, const std::string& text);

/// JSON with two-space indentation and a trailing newline.
std::string dump_json(const nlohmann::json& doc);

/// CSV text: a "# key=value ..." meta line, a header line, then rows.
std::string csv_text(const std::string& meta, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

/// Binary cache of a ball: a small header, then for each element its
/// length, word and row-major matrix entries.
void write_ball_cache(const groups::WordBall& ball, const std::filesystem::path& path);

struct BallCacheHeader {
  std::uint32_t dim = 0;
  std::uint32_t radius = 0;
  std::uint64_t count = 0;
};
BallCacheHeader read_ball_cache_header(const std::filesystem::path& path);

}  // namespace anosov::io
