#pragma once

#include <string>
#include <string_view>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "eyvp/errors.hpp"

namespace eyvp::uni {

namespace detail {

inline const icu::Normalizer2& nfc() {
  static const icu::Normalizer2* inst = [] {
    UErrorCode ec = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(ec);
    if (U_FAILURE(ec) || n == nullptr) throw Error("ICU NFC normalizer unavailable");
    return n;
  }();
  return *inst;
}

inline const icu::Normalizer2& nfd() {
  static const icu::Normalizer2* inst = [] {
    UErrorCode ec = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(ec);
    if (U_FAILURE(ec) || n == nullptr) throw Error("ICU NFD normalizer unavailable");
    return n;
  }();
  return *inst;
}

inline icu::UnicodeString from_utf8(std::string_view text) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
}

inline std::string to_utf8(const icu::UnicodeString& us) {
  std::string out;
  us.toUTF8String(out);
  return out;
}

}  // namespace detail

// Canonical composition (NFC). Idempotent; stored strings throughout the
// library are kept in this form.
inline std::string normalize(std::string_view text) {
  UErrorCode ec = U_ZERO_ERROR;
  icu::UnicodeString out = detail::nfc().normalize(detail::from_utf8(text), ec);
  if (U_FAILURE(ec)) throw Error("unicode normalization failed");
  return detail::to_utf8(out);
}

// Full case fold followed by NFC. Used for all lexicon keys.
inline std::string fold(std::string_view text) {
  icu::UnicodeString us = detail::from_utf8(text);
  us.foldCase();
  UErrorCode ec = U_ZERO_ERROR;
  icu::UnicodeString out = detail::nfc().normalize(us, ec);
  if (U_FAILURE(ec)) throw Error("unicode normalization failed");
  return detail::to_utf8(out);
}

// Drops combining marks (tone accents, under-dots) after canonical
// decomposition, then recomposes. "bàbá" -> "baba", "ọmọ" -> "omo".
inline std::string strip_marks(std::string_view text) {
  UErrorCode ec = U_ZERO_ERROR;
  icu::UnicodeString dec = detail::nfd().normalize(detail::from_utf8(text), ec);
  if (U_FAILURE(ec)) throw Error("unicode normalization failed");
  icu::UnicodeString kept;
  for (int32_t i = 0; i < dec.length();) {
    UChar32 c = dec.char32At(i);
    if (u_charType(c) != U_NON_SPACING_MARK) kept.append(c);
    i += U16_LENGTH(c);
  }
  icu::UnicodeString out = detail::nfc().normalize(kept, ec);
  if (U_FAILURE(ec)) throw Error("unicode normalization failed");
  return detail::to_utf8(out);
}

inline bool is_space(UChar32 c) { return u_isUWhiteSpace(c); }

// True when the first code point is an uppercase (or titlecase) letter.
inline bool starts_upper(std::string_view text) {
  if (text.empty()) return false;
  icu::UnicodeString us = detail::from_utf8(text);
  if (us.isEmpty()) return false;
  UChar32 c = us.char32At(0);
  return u_isupper(c) || u_istitle(c);
}

// Uppercases the first code point only.
inline std::string capitalize_first(std::string_view text) {
  icu::UnicodeString us = detail::from_utf8(text);
  if (us.isEmpty()) return std::string(text);
  UChar32 c = us.char32At(0);
  icu::UnicodeString out;
  out.append(u_toupper(c));
  out.append(us, U16_LENGTH(c), us.length() - U16_LENGTH(c));
  return detail::to_utf8(out);
}

}  // namespace eyvp::uni
