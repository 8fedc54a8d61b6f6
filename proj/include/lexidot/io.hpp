#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace lexidot {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Calls `fn(line_number, record)` for every non-blank line of a JSON Lines
/// stream. Lines are 1-based. Syntax errors and invalid UTF-8 raise
/// ParseError with the offending line.
void for_each_jsonl(std::istream& in, const std::function<void(std::size_t, const Json&)>& fn);

/// Opens `path` for reading, raising IoError when it cannot be opened.
std::ifstream open_input(const std::filesystem::path& path);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

/// Typed field accessors that report the line and key on failure.
std::string require_string(const Json& rec, std::string_view key, std::size_t line);
std::int64_t require_int(const Json& rec, std::string_view key, std::size_t line);

}  // namespace lexidot
