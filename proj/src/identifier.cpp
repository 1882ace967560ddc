#include "prooftutor/identifier.hpp"

#include "prooftutor/text.hpp"

namespace prooftutor::lexer {

bool is_letter_like(char32_t c) {
  return (0x3b1 <= c && c <= 0x3c9 && c != 0x3bb) ||                // lower Greek, not λ
         (0x391 <= c && c <= 0x3a9 && c != 0x3a0 && c != 0x3a3) ||  // upper Greek, not Π Σ
         (0x3ca <= c && c <= 0x3fb) ||                              // Coptic
         (0x1f00 <= c && c <= 0x1ffe) ||                            // polytonic Greek
         (0x2100 <= c && c <= 0x214f) ||                            // letterlike block (ℕ, ℤ, ...)
         (0x1d49c <= c && c <= 0x1d59f);                            // script, double-struck, fraktur
}

bool is_subscript_alnum(char32_t c) {
  return (0x2080 <= c && c <= 0x2089) || (0x2090 <= c && c <= 0x209c) || (0x1d62 <= c && c <= 0x1d6a);
}

namespace {
bool ascii_alpha(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }
bool ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
constexpr char32_t kDagger = 0x271D;
}  // namespace

bool is_id_first(char32_t c) { return ascii_alpha(c) || c == U'_' || is_letter_like(c); }

bool is_id_rest(char32_t c) {
  return ascii_alpha(c) || ascii_digit(c) || c == U'_' || c == U'\'' || c == U'!' || c == U'?' ||
         is_letter_like(c) || is_subscript_alnum(c) || c == kDagger;
}

bool is_valid_identifier(std::u32string_view s) {
  if (s.empty()) return false;
  bool at_atom_start = true;
  for (char32_t c : s) {
    if (at_atom_start) {
      if (!is_id_first(c)) return false;
      at_atom_start = false;
    } else if (c == U'.') {
      at_atom_start = true;
    } else if (!is_id_rest(c)) {
      return false;
    }
  }
  return !at_atom_start;
}

std::size_t longest_identifier_length(std::u32string_view text, std::size_t i) {
  if (i >= text.size() || !is_id_first(text[i])) return 0;
  std::size_t end = i + 1;
  for (;;) {
    while (end < text.size() && is_id_rest(text[end])) ++end;
    if (end + 1 < text.size() && text[end] == U'.' && is_id_first(text[end + 1])) {
      end += 2;
      continue;
    }
    return end - i;
  }
}

std::optional<std::u32string> longest_identifier_at(std::u32string_view text, std::size_t i) {
  const auto len = longest_identifier_length(text, i);
  if (len == 0) return std::nullopt;
  return std::u32string(text.substr(i, len));
}

std::vector<Token> identifiers(std::string_view utf8) {
  const auto cps = text::decode_utf8(utf8);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    const auto len = longest_identifier_length(cps, i);
    if (len == 0) {
      ++i;
      continue;
    }
    out.push_back(Token{text::encode_utf8(std::u32string_view(cps).substr(i, len)), i});
    i += len;
  }
  return out;
}

bool contains_identifier(std::string_view utf8, std::string_view name) {
  for (const auto& tok : identifiers(utf8))
    if (tok.text == name) return true;
  return false;
}

}  // namespace prooftutor::lexer
