#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace prooftutor::text {

std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);
void append_utf8(std::string& out, char32_t cp);

std::string_view trim(std::string_view s);
std::string_view trim_left(std::string_view s);
std::string_view trim_right(std::string_view s);

/// Splits on '\n'; a trailing '\r' on each line is dropped. An empty input
/// yields no lines; a trailing newline does not produce an empty last line.
std::vector<std::string> split_lines(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool is_blank(std::string_view s);
std::string to_lower_ascii(std::string_view s);

/// Hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// 64-bit FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t fnv1a64(std::string_view data);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace prooftutor::text
