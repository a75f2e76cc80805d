#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace copod {

// Shortest decimal form carrying 17 significant digits; round-trips any
// finite double exactly and is locale-independent.
std::string format_real17(double value);

// Strict, locale-independent decimal parse. The whole (trimmed) token must be
// consumed. Accepts nan/inf spellings; callers reject non-finite values where
// the schema demands it.
std::optional<double> parse_real(std::string_view token);

std::string_view trim(std::string_view s);

// Splits on a single-character delimiter; keeps empty fields.
std::vector<std::string_view> split(std::string_view line, char delim);

// Lowercase copy (ASCII only).
std::string to_lower(std::string_view s);

}  // namespace copod
