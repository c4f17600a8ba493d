#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "eyvp/unicode.hpp"

namespace eyvp {

struct Token {
  std::string surface;  // original piece, outer punctuation removed
  std::string folded;   // NFC(casefold(surface)), the lexicon key
  std::size_t index = 0;

  bool operator==(const Token&) const = default;
};

inline std::string normalize(std::string_view text) { return uni::normalize(text); }

namespace detail {

inline std::vector<std::string> split_spaces(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ') {
      ++i;
      continue;
    }
    std::size_t begin = i;
    while (i < s.size() && s[i] != ' ') ++i;
    out.emplace_back(s.substr(begin, i - begin));
  }
  return out;
}

// Outer punctuation stripped from each whitespace-separated piece.
inline bool is_strippable_punct(UChar32 c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '"': case '\'': case '(': case ')':
      return true;
    default:
      return false;
  }
}

}  // namespace detail

// Splits on Unicode whitespace, trims outer punctuation, drops empty pieces.
// Folded forms are casefolded NFC; surfaces keep the original casing.
inline std::vector<Token> tokenize(std::string_view text) {
  icu::UnicodeString us = uni::detail::from_utf8(text);
  std::vector<Token> tokens;
  int32_t i = 0;
  while (i < us.length()) {
    UChar32 c = us.char32At(i);
    if (uni::is_space(c)) {
      i += U16_LENGTH(c);
      continue;
    }
    int32_t begin = i;
    while (i < us.length() && !uni::is_space(us.char32At(i))) i += U16_LENGTH(us.char32At(i));
    icu::UnicodeString piece(us, begin, i - begin);
    // trim leading punctuation
    int32_t lo = 0;
    while (lo < piece.length() && detail::is_strippable_punct(piece.char32At(lo)))
      lo += U16_LENGTH(piece.char32At(lo));
    // trim trailing punctuation
    int32_t hi = piece.length();
    while (hi > lo) {
      int32_t prev = hi;
      U16_BACK_1(piece.getBuffer(), lo, prev);
      if (!detail::is_strippable_punct(piece.char32At(prev))) break;
      hi = prev;
    }
    if (hi <= lo) continue;
    icu::UnicodeString core(piece, lo, hi - lo);
    Token tok;
    tok.surface = uni::detail::to_utf8(core);
    tok.folded = uni::fold(tok.surface);
    tok.index = tokens.size();
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

}  // namespace eyvp
