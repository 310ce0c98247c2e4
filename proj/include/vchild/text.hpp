#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vchild::text {

std::string_view trim(std::string_view s);

std::string to_lower_ascii(std::string_view s);

/// Collapses every run of whitespace into one space and trims the ends.
std::string collapse_whitespace(std::string_view s);

/// Longest prefix of at most `max_bytes` bytes that does not split a UTF-8
/// sequence.
std::string_view utf8_prefix(std::string_view s, std::size_t max_bytes);

std::vector<std::string_view> split_lines(std::string_view s);

bool starts_with_icase(std::string_view s, std::string_view prefix);

}  // namespace vchild::text
