#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "eyvp/errors.hpp"
#include "eyvp/lexicon.hpp"
#include "eyvp/transfer.hpp"
#include "eyvp/unicode.hpp"

namespace eyvp {

class EvalError : public Error {
 public:
  using Error::Error;
};

struct GoldPair {
  std::string source;
  std::string expected;

  bool operator==(const GoldPair&) const = default;
};

struct Exclusion {
  std::string source;
  std::string reason;

  bool operator==(const Exclusion&) const = default;
};

// Gold TSV: "source<TAB>expected" per line, #-comments and blanks skipped.
inline std::vector<GoldPair> load_gold(std::string_view document) {
  std::vector<GoldPair> out;
  std::size_t lineno = 0;
  for (std::string_view raw : detail::split_lines(document)) {
    ++lineno;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields = detail::split_tabs(raw);
    if (fields.size() != 2)
      throw EvalError("gold line " + std::to_string(lineno) + ": expected 2 tab-separated fields, got " +
                      std::to_string(fields.size()));
    GoldPair pair{uni::normalize(detail::trim(fields[0])), uni::normalize(detail::trim(fields[1]))};
    if (pair.source.empty() || pair.expected.empty())
      throw EvalError("gold line " + std::to_string(lineno) + ": empty field");
    out.push_back(std::move(pair));
  }
  return out;
}

// Exclusion TSV: "source<TAB>reason" per line. Sources are matched against
// gold sources ignoring case and diacritics.
inline std::vector<Exclusion> load_exclusions(std::string_view document) {
  std::vector<Exclusion> out;
  std::size_t lineno = 0;
  for (std::string_view raw : detail::split_lines(document)) {
    ++lineno;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields = detail::split_tabs(raw);
    if (fields.size() != 2)
      throw EvalError("exclusion line " + std::to_string(lineno) +
                      ": expected 2 tab-separated fields, got " + std::to_string(fields.size()));
    Exclusion ex{uni::normalize(detail::trim(fields[0])), std::string(detail::trim(fields[1]))};
    if (ex.source.empty() || ex.reason.empty())
      throw EvalError("exclusion line " + std::to_string(lineno) + ": empty field");
    out.push_back(std::move(ex));
  }
  return out;
}

// Comparison key: casefold, optionally strip diacritics, collapse interior
// whitespace, trim. Two renderings compare equal iff these keys match.
inline std::string eval_fold(std::string_view text, bool strip_diacritics) {
  std::string folded = uni::fold(text);
  if (strip_diacritics) folded = uni::strip_marks(folded);
  std::vector<Token> words = tokenize(folded);
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i].surface;
  }
  return out;
}

struct EvalRecord {
  std::string source;
  std::string expected;
  std::string got;          // rule-channel rendering, empty when the pipeline failed
  TranslateStatus status = TranslateStatus::Ok;
  bool match = false;
};

struct ExcludedRecord {
  std::string source;
  std::string reason;
};

struct EvalReport {
  std::vector<EvalRecord> records;
  std::vector<ExcludedRecord> excluded;
  bool strict_diacritics = false;

  std::size_t total() const { return records.size(); }
  std::size_t matches() const {
    std::size_t n = 0;
    for (const EvalRecord& r : records) n += r.match;
    return n;
  }
  double accuracy() const {
    return records.empty() ? 1.0 : static_cast<double>(matches()) / static_cast<double>(total());
  }
  bool perfect() const { return matches() == total(); }
};

// Runs every non-excluded gold pair through the translator and compares the
// rule channel against the expectation. By default diacritics are ignored;
// strict mode keeps them (comparison still ignores case).
inline EvalReport evaluate(const Translator& translator, const std::vector<GoldPair>& gold,
                           const std::vector<Exclusion>& exclusions = {},
                           bool strict_diacritics = false) {
  const bool strip = !strict_diacritics;
  EvalReport report;
  report.strict_diacritics = strict_diacritics;
  for (const GoldPair& pair : gold) {
    const Exclusion* skip = nullptr;
    for (const Exclusion& ex : exclusions)
      if (eval_fold(ex.source, true) == eval_fold(pair.source, true)) {
        skip = &ex;
        break;
      }
    if (skip) {
      report.excluded.push_back({pair.source, skip->reason});
      continue;
    }
    EvalRecord rec;
    rec.source = pair.source;
    rec.expected = pair.expected;
    Translation t = translator.translate(pair.source);
    rec.status = t.status;
    if (t.ok()) {
      rec.got = t.rule_text(strip);
      rec.match = eval_fold(rec.got, strip) == eval_fold(pair.expected, strip);
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace eyvp
