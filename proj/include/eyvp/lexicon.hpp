#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eyvp/errors.hpp"
#include "eyvp/pos.hpp"
#include "eyvp/unicode.hpp"

namespace eyvp {

class LexiconError : public Error {
 public:
  LexiconError(std::size_t line, const std::string& what)
      : Error("lexicon line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LexEntry {
  std::string source;  // casefolded NFC, no whitespace
  PosTag pos = PosTag::Noun;
  std::string target;  // NFC, may contain internal spaces

  bool operator==(const LexEntry&) const = default;
};

// Bilingual English->Yorùbá dictionary keyed by (source, pos). Immutable
// after construction; all queries are pure.
class Lexicon {
 public:
  Lexicon() = default;

  // Entries are normalized (source casefolded, both sides NFC). Throws
  // LexiconError on empty fields, whitespace in a source, or duplicate keys.
  static Lexicon from_entries(std::vector<LexEntry> entries, std::string domain = "home") {
    Lexicon lex;
    lex.domain_ = std::move(domain);
    std::size_t n = 0;
    for (LexEntry& e : entries) {
      ++n;
      lex.insert(std::move(e), n);
    }
    return lex;
  }

  std::optional<std::string> lookup(std::string_view surface, PosTag pos) const {
    auto it = entries_.find(Key{uni::fold(surface), pos});
    if (it == entries_.end()) return std::nullopt;
    return it->second.target;
  }

  // Every tag the folded surface is listed under, in priority order
  // (verb, det, prep, adj, noun, pron). Empty means unknown word.
  std::vector<PosTag> tag_candidates(std::string_view surface) const {
    std::string key = uni::fold(surface);
    std::vector<PosTag> tags;
    for (PosTag t : kPosTagsByPriority)
      if (entries_.contains(Key{key, t})) tags.push_back(t);
    return tags;
  }

  std::size_t size() const { return entries_.size(); }
  const std::string& domain() const { return domain_; }

  // Sorted by (source, pos).
  std::vector<LexEntry> entries() const {
    std::vector<LexEntry> out;
    out.reserve(entries_.size());
    for (const auto& [key, val] : entries_)
      out.push_back(LexEntry{key.first, key.second, val.target});
    return out;
  }

  bool operator==(const Lexicon& other) const {
    if (domain_ != other.domain_ || entries_.size() != other.entries_.size()) return false;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    for (; a != entries_.end(); ++a, ++b)
      if (a->first != b->first || a->second.target != b->second.target) return false;
    return true;
  }

 private:
  using Key = std::pair<std::string, PosTag>;
  struct Value {
    std::string target;
    std::size_t line;  // where the entry was defined, for duplicate reports
  };

  void insert(LexEntry e, std::size_t line) {
    e.source = uni::fold(e.source);
    e.target = uni::normalize(e.target);
    if (e.source.empty()) throw LexiconError(line, "empty source word");
    if (e.target.empty()) throw LexiconError(line, "empty target text");
    icu::UnicodeString us = uni::detail::from_utf8(e.source);
    for (int32_t i = 0; i < us.length();) {
      UChar32 c = us.char32At(i);
      if (uni::is_space(c)) throw LexiconError(line, "source word contains whitespace");
      i += U16_LENGTH(c);
    }
    Key key{std::move(e.source), e.pos};
    auto [it, inserted] = entries_.try_emplace(key, Value{std::move(e.target), line});
    if (!inserted)
      throw LexiconError(line, "duplicate entry for (" + key.first + ", " +
                                   std::string(pos_name(key.second)) + "); first defined at line " +
                                   std::to_string(it->second.line));
  }

  friend Lexicon load_lexicon(std::string_view document);

  std::string domain_;
  std::map<Key, Value> entries_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_lines(std::string_view doc) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= doc.size()) {
    std::size_t nl = doc.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < doc.size()) lines.push_back(doc.substr(pos));
      break;
    }
    lines.push_back(doc.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

}  // namespace detail

// Loads the TSV lexicon format: one "source<TAB>pos<TAB>target" entry per
// line; blank lines and #-comments are skipped. Line numbers are 1-based.
inline Lexicon load_lexicon(std::string_view document) {
  Lexicon lex;
  lex.domain_ = "home";
  std::size_t lineno = 0;
  for (std::string_view raw : detail::split_lines(document)) {
    ++lineno;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields = detail::split_tabs(raw);
    if (fields.size() != 3)
      throw LexiconError(lineno, "expected 3 tab-separated fields, got " +
                                     std::to_string(fields.size()));
    std::string_view src = detail::trim(fields[0]);
    std::string_view posname = detail::trim(fields[1]);
    std::string_view tgt = detail::trim(fields[2]);
    std::optional<PosTag> pos = pos_from_name(posname);
    if (!pos)
      throw LexiconError(lineno, "unknown part-of-speech name '" + std::string(posname) + "'");
    lex.insert(LexEntry{std::string(src), *pos, std::string(tgt)}, lineno);
  }
  return lex;
}

// Inverse of load_lexicon for the entries it stores.
inline std::string to_tsv(const Lexicon& lex) {
  std::ostringstream out;
  for (const LexEntry& e : lex.entries())
    out << e.source << '\t' << pos_name(e.pos) << '\t' << e.target << '\n';
  return out.str();
}

}  // namespace eyvp
