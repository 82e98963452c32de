#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace irops::text {

std::string_view trim(std::string_view s) noexcept;

/// Splits one CSV line on commas. Double-quoted fields may contain commas;
/// a doubled quote inside a quoted field is a literal quote.
std::vector<std::string> split_csv_line(std::string_view line);

/// Quotes a field only when it contains a comma, quote, or newline.
std::string csv_field(std::string_view s);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

/// Strict numeric parses: the whole (trimmed) string must be consumed.
bool parse_double(std::string_view s, double& out) noexcept;
bool parse_int(std::string_view s, std::int64_t& out) noexcept;
bool parse_uint(std::string_view s, std::uint64_t& out) noexcept;

/// Accepts true/false, 1/0, yes/no (case-insensitive).
bool parse_bool(std::string_view s, bool& out) noexcept;

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace irops::text
