#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vform {

/// Library version string.
std::string_view version();

/// Shortest round-trip decimal representation of `value`, locale-free.
std::string format_number(double value);

/// `value` with `digits` significant digits, for human-facing summaries.
std::string format_significant(double value, int digits = 6);

/// 64-bit FNV-1a digest.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);

/// Writes every (path, contents) pair through a temporary sibling file and
/// renames it into place only after all temporaries were written. On failure
/// no target is touched and temporaries are removed; the filesystem error
/// propagates unchanged.
void write_files_atomically(const std::vector<std::pair<std::filesystem::path, std::string>>& files);

/// Quotes a CSV field if it contains a separator, quote or newline.
std::string csv_field(std::string_view text);

/// Splits "a,b,c" into numbers. Throws ConfigError naming `what` on
/// malformed entries.
std::vector<double> parse_number_list(std::string_view text, std::string_view what);

/// Strict full-string number parse. Throws ConfigError naming `what`.
double parse_number(std::string_view text, std::string_view what);

}  // namespace vform
