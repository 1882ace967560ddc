#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prooftutor::lexer {

// Lean 4 identifier character classes. Guillemet-quoted names are not
// supported. The dagger Lean appends to inaccessible names (`a✝`) is
// treated as an identifier continuation so such names lex whole.
bool is_letter_like(char32_t c);
bool is_subscript_alnum(char32_t c);
bool is_id_first(char32_t c);
bool is_id_rest(char32_t c);

/// Atoms (id_first id_rest*) joined by single dots.
bool is_valid_identifier(std::u32string_view s);

/// Longest valid identifier starting exactly at code point `i`, if any.
std::optional<std::u32string> longest_identifier_at(std::u32string_view text, std::size_t i);
std::size_t longest_identifier_length(std::u32string_view text, std::size_t i);

struct Token {
  std::string text;    // UTF-8
  std::size_t offset;  // code point index of the first character
};

/// Every identifier in `utf8`, scanning left to right the way the state
/// normalizer does: take the longest identifier at the cursor, otherwise
/// step one character.
std::vector<Token> identifiers(std::string_view utf8);

/// Whether `name` occurs in `utf8` as a whole identifier.
bool contains_identifier(std::string_view utf8, std::string_view name);

}  // namespace prooftutor::lexer
