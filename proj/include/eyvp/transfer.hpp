#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eyvp/errors.hpp"
#include "eyvp/fsa.hpp"
#include "eyvp/grammar.hpp"
#include "eyvp/lexicon.hpp"
#include "eyvp/parse.hpp"
#include "eyvp/pos.hpp"
#include "eyvp/text.hpp"
#include "eyvp/unicode.hpp"

namespace eyvp {

class TransferError : public Error {
 public:
  using Error::Error;
};

// One output slot of a transfer rule: either a child of the source node,
// addressed by position, or an inserted literal particle.
struct TransferStep {
  enum class Kind { Copy, Particle };

  Kind kind = Kind::Copy;
  std::size_t index = 0;    // Kind::Copy, position in the source rhs
  std::string literal;      // Kind::Particle

  static TransferStep copy(std::size_t i) { return {Kind::Copy, i, {}}; }
  static TransferStep particle(std::string lit) { return {Kind::Particle, 0, std::move(lit)}; }

  bool operator==(const TransferStep&) const = default;
};

// Maps one source production shape to an output order. The pattern is the
// source rhs by symbol name, so NP / DET ADJ N matches regardless of which
// grammar object produced it.
struct TransferRule {
  std::string lhs;
  std::vector<std::string> pattern;
  std::vector<TransferStep> steps;

  bool matches(const Production& p) const {
    if (p.lhs.name != lhs || p.rhs.size() != pattern.size()) return false;
    for (std::size_t i = 0; i < pattern.size(); ++i)
      if (symbol_name(p.rhs[i]) != pattern[i]) return false;
    return true;
  }

  bool operator==(const TransferRule&) const = default;
};

class TransferRuleSet {
 public:
  TransferRuleSet() = default;
  explicit TransferRuleSet(std::vector<TransferRule> rules) : rules_(std::move(rules)) {}

  const std::vector<TransferRule>& rules() const { return rules_; }

  // First rule whose pattern matches; throws when no rule covers the
  // production, so coverage gaps surface instead of passing silently.
  const TransferRule& rule_for(const Production& p) const {
    for (const TransferRule& r : rules_)
      if (r.matches(p)) return r;
    std::string shape = p.lhs.name + " ->";
    for (const Symbol& s : p.rhs) shape += " " + symbol_name(s);
    throw TransferError("no transfer rule for production: " + shape);
  }

  bool covers(const Production& p) const {
    for (const TransferRule& r : rules_)
      if (r.matches(p)) return true;
    return false;
  }

 private:
  std::vector<TransferRule> rules_;
};

// English noun phrases are head-final (the cold water); the target order is
// head-initial with trailing modifiers and determiner (omi tutu naa), so NP
// children reverse. Double objects take the particle "ni" before the second
// object. Everything else keeps source order.
inline TransferRuleSet builtin_transfer_rules() {
  auto c = [](std::size_t i) { return TransferStep::copy(i); };
  return TransferRuleSet({
      {"VP", {"V", "NP", "PP"}, {c(0), c(1), c(2)}},
      {"VP", {"V", "NP", "NP"}, {c(0), c(1), TransferStep::particle("ni"), c(2)}},
      {"VP", {"V", "NP"}, {c(0), c(1)}},
      {"VP", {"V", "PP"}, {c(0), c(1)}},
      {"VP", {"V"}, {c(0)}},
      {"NP", {"DET", "ADJ", "N"}, {c(2), c(1), c(0)}},
      {"NP", {"DET", "N"}, {c(1), c(0)}},
      {"NP", {"ADJ", "N"}, {c(1), c(0)}},
      {"NP", {"N"}, {c(0)}},
      {"PP", {"P", "NP"}, {c(0), c(1)}},
  });
}

// Rewrites a source parse tree into a target-side tree, bottom-up. Each
// phrase node is reordered by its transfer rule and re-anchored to the
// target-grammar production with the resulting shape, so the output is a
// derivation tree of the target grammar.
inline ParseTree transfer_tree(const ParseTree& tree, const TransferRuleSet& rules,
                               const Grammar& target) {
  if (tree.kind != ParseTree::Kind::Phrase) return tree;

  std::vector<ParseTree> moved(tree.children.size());
  for (std::size_t i = 0; i < tree.children.size(); ++i)
    moved[i] = transfer_tree(tree.children[i], rules, target);

  const TransferRule& rule = rules.rule_for(tree.production);
  std::vector<ParseTree> out;
  out.reserve(rule.steps.size());
  for (const TransferStep& step : rule.steps) {
    if (step.kind == TransferStep::Kind::Particle) {
      out.push_back(ParseTree::make_particle(step.literal));
    } else {
      if (step.index >= moved.size())
        throw TransferError("transfer rule for " + tree.production.lhs.name +
                            " copies child " + std::to_string(step.index) +
                            " past the end of the production");
      out.push_back(moved[step.index]);
    }
  }

  std::vector<Symbol> shape;
  shape.reserve(out.size());
  for (const ParseTree& child : out) shape.push_back(child.root_symbol());
  for (const Production* p : target.productions_for(tree.production.lhs))
    if (p->rhs == shape) return ParseTree::make_phrase(*p, std::move(out));

  std::string what = tree.production.lhs.name + " ->";
  for (const Symbol& s : shape) what += " " + symbol_name(s);
  throw TransferError("transfer output is not derivable in the target grammar: " + what);
}

// Leaf-by-leaf target wording of a (transferred) tree. Multiword targets
// split into separate tokens; words missing from the lexicon pass through
// unchanged and are reported.
struct Lexicalized {
  std::vector<std::string> tokens;
  std::vector<std::string> unknowns;
};

inline Lexicalized lexicalize(const ParseTree& tree, const Lexicon& lexicon) {
  Lexicalized out;
  auto emit = [&](const std::string& word) {
    for (const std::string& piece : detail::split_spaces(word))
      out.tokens.push_back(piece);
  };
  for (const ParseTree* leaf : leaves(tree)) {
    if (leaf->kind == ParseTree::Kind::Particle) {
      out.tokens.push_back(leaf->particle);
      continue;
    }
    std::optional<std::string> target = lexicon.lookup(leaf->word.token.surface, leaf->word.tag);
    if (target) {
      emit(*target);
    } else {
      out.tokens.push_back(leaf->word.token.surface);
      out.unknowns.push_back(leaf->word.token.surface);
    }
  }
  return out;
}

// Word-for-word channel: each token is looked up under its highest-priority
// tag and replaced in place; source order is kept.
inline Lexicalized w4w_translate(std::span<const Token> tokens, const Lexicon& lexicon) {
  Lexicalized out;
  for (const Token& token : tokens) {
    std::vector<PosTag> candidates = lexicon.tag_candidates(token.surface);
    if (candidates.empty()) {
      out.tokens.push_back(token.surface);
      out.unknowns.push_back(token.surface);
      continue;
    }
    std::optional<std::string> target = lexicon.lookup(token.surface, candidates.front());
    for (const std::string& piece : detail::split_spaces(*target))
      out.tokens.push_back(piece);
  }
  return out;
}
inline Lexicalized w4w_translate(const std::vector<Token>& tokens, const Lexicon& lexicon) {
  return w4w_translate(std::span<const Token>(tokens), lexicon);
}

// Joins target tokens into a surface string. Casing mirrors the input:
// capitalize iff the source phrase began with an uppercase letter.
inline std::string render(const std::vector<std::string>& tokens, bool capitalize_first,
                          bool strip_diacritics = false) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string piece = strip_diacritics ? uni::strip_marks(tokens[i]) : tokens[i];
    if (i == 0 && capitalize_first) piece = uni::capitalize_first(piece);
    if (i) out += ' ';
    out += piece;
  }
  return out;
}

enum class TranslateStatus { Ok, EmptyInput, UnknownWord, NoParse, Transfer };

inline std::string_view status_name(TranslateStatus s) {
  switch (s) {
    case TranslateStatus::Ok: return "ok";
    case TranslateStatus::EmptyInput: return "empty-input";
    case TranslateStatus::UnknownWord: return "unknown-word";
    case TranslateStatus::NoParse: return "no-parse";
    case TranslateStatus::Transfer: return "transfer";
  }
  return "unknown";
}

// Result of one phrase through the pipeline. The word-for-word channel is
// filled in whenever the input tokenizes; the rule channel only on Ok.
struct Translation {
  std::string source;                       // normalized input
  TranslateStatus status = TranslateStatus::Ok;
  std::string error;                        // empty on Ok
  std::optional<ParseTree> source_tree;
  std::optional<ParseTree> target_tree;
  std::vector<std::string> w4w_tokens;
  std::vector<std::string> rule_tokens;
  std::vector<std::string> unknowns;        // source words with no entry
  std::vector<PosTag> source_tags;          // tags of the chosen parse
  bool first_capitalized = false;

  bool ok() const { return status == TranslateStatus::Ok; }
  std::string w4w_text(bool strip = false) const {
    return render(w4w_tokens, first_capitalized, strip);
  }
  std::string rule_text(bool strip = false) const {
    return render(rule_tokens, first_capitalized, strip);
  }
};

// Full pipeline: tokenize, parse against the source grammar, transfer,
// lexicalize. The target tag sequence is checked against the compiled
// target automaton; a rejection means the rule set and grammar disagree and
// is reported as a transfer failure rather than silently emitted.
class Translator {
 public:
  Translator(Lexicon lexicon, Grammar source, Grammar target,
             TransferRuleSet rules = builtin_transfer_rules())
      : lexicon_(std::move(lexicon)),
        source_(std::move(source)),
        target_(std::move(target)),
        rules_(std::move(rules)),
        target_fsa_(compile(target_)) {}

  explicit Translator(Lexicon lexicon)
      : Translator(std::move(lexicon), source_grammar(), target_grammar()) {}

  const Lexicon& lexicon() const { return lexicon_; }
  const Grammar& source() const { return source_; }
  const Grammar& target() const { return target_; }
  const Fsa& target_fsa() const { return target_fsa_; }

  Translation translate(std::string_view text) const {
    Translation t;
    t.source = normalize(text);
    std::vector<Token> tokens = tokenize(t.source);
    if (tokens.empty()) {
      t.status = TranslateStatus::EmptyInput;
      t.error = "no words in input";
      return t;
    }
    t.first_capitalized = uni::starts_upper(tokens.front().surface);

    Lexicalized w4w = w4w_translate(tokens, lexicon_);
    t.w4w_tokens = std::move(w4w.tokens);
    t.unknowns = std::move(w4w.unknowns);

    try {
      ParseTree parsed = parse(tokens, lexicon_, source_);
      for (const ParseTree* leaf : leaves(parsed)) t.source_tags.push_back(leaf->word.tag);
      ParseTree moved = transfer_tree(parsed, rules_, target_);
      if (!target_fsa_.accepts(tag_sequence(moved)))
        throw TransferError("transferred tag sequence rejected by the target automaton");
      Lexicalized ruled = lexicalize(moved, lexicon_);
      t.rule_tokens = std::move(ruled.tokens);
      t.source_tree = std::move(parsed);
      t.target_tree = std::move(moved);
    } catch (const UnknownWordError& e) {
      t.status = TranslateStatus::UnknownWord;
      t.error = e.what();
    } catch (const NoParseError& e) {
      t.status = TranslateStatus::NoParse;
      t.error = e.what();
    } catch (const TransferError& e) {
      t.status = TranslateStatus::Transfer;
      t.error = e.what();
    }
    return t;
  }

 private:
  Lexicon lexicon_;
  Grammar source_;
  Grammar target_;
  TransferRuleSet rules_;
  Fsa target_fsa_;
};

}  // namespace eyvp
