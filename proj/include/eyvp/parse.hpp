#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eyvp/errors.hpp"
#include "eyvp/grammar.hpp"
#include "eyvp/lexicon.hpp"
#include "eyvp/text.hpp"

namespace eyvp {

struct TaggedToken {
  Token token;
  PosTag tag = PosTag::Noun;

  bool operator==(const TaggedToken&) const = default;
};

// Constituent tree over tagged tokens. Interior nodes record the production
// they were built from; their children mirror its right-hand side in order.
// Particle leaves only occur in transferred (target-side) trees.
struct ParseTree {
  enum class Kind { Word, Particle, Phrase };

  Kind kind = Kind::Phrase;
  TaggedToken word;             // Kind::Word
  std::string particle;         // Kind::Particle, the literal ("ni")
  Production production;        // Kind::Phrase
  std::vector<ParseTree> children;

  static ParseTree make_word(TaggedToken t) {
    ParseTree n;
    n.kind = Kind::Word;
    n.word = std::move(t);
    return n;
  }
  static ParseTree make_particle(std::string literal) {
    ParseTree n;
    n.kind = Kind::Particle;
    n.particle = std::move(literal);
    return n;
  }
  static ParseTree make_phrase(Production p, std::vector<ParseTree> ch) {
    ParseTree n;
    n.kind = Kind::Phrase;
    n.production = std::move(p);
    n.children = std::move(ch);
    return n;
  }

  Symbol root_symbol() const {
    switch (kind) {
      case Kind::Word: return to_terminal(word.tag);
      case Kind::Particle: return Terminal::Prt;
      case Kind::Phrase: return production.lhs;
    }
    return Terminal::Prt;
  }

  bool operator==(const ParseTree&) const = default;
};

inline void collect_leaves(const ParseTree& t, std::vector<const ParseTree*>& out) {
  if (t.kind == ParseTree::Kind::Phrase) {
    for (const ParseTree& c : t.children) collect_leaves(c, out);
  } else {
    out.push_back(&t);
  }
}

// Leaf nodes, left to right.
inline std::vector<const ParseTree*> leaves(const ParseTree& t) {
  std::vector<const ParseTree*> out;
  collect_leaves(t, out);
  return out;
}

// Tag readout of the leaves; particles read as PRT.
inline std::vector<Terminal> tag_sequence(const ParseTree& t) {
  std::vector<Terminal> tags;
  for (const ParseTree* leaf : leaves(t))
    tags.push_back(leaf->kind == ParseTree::Kind::Particle ? Terminal::Prt
                                                           : to_terminal(leaf->word.tag));
  return tags;
}

// Nested-bracket rendering, e.g. "(VP (V eat) (NP (DET the) (N meat)))".
inline std::string bracket(const ParseTree& t) {
  switch (t.kind) {
    case ParseTree::Kind::Word:
      return "(" + std::string(terminal_name(to_terminal(t.word.tag))) + " " + t.word.token.surface + ")";
    case ParseTree::Kind::Particle:
      return "(PRT " + t.particle + ")";
    case ParseTree::Kind::Phrase: {
      std::string out = "(" + t.production.lhs.name;
      for (const ParseTree& c : t.children) out += " " + bracket(c);
      return out + ")";
    }
  }
  return {};
}

class UnknownWordError : public Error {
 public:
  UnknownWordError(std::string surface, std::size_t index)
      : Error("unknown word '" + surface + "' at position " + std::to_string(index)),
        surface_(std::move(surface)),
        index_(index) {}
  const std::string& surface() const { return surface_; }
  std::size_t index() const { return index_; }

 private:
  std::string surface_;
  std::size_t index_;
};

class NoParseError : public Error {
 public:
  explicit NoParseError(std::vector<std::vector<PosTag>> candidates)
      : Error(describe(candidates)), candidates_(std::move(candidates)) {}
  const std::vector<std::vector<PosTag>>& candidates() const { return candidates_; }

 private:
  static std::string describe(const std::vector<std::vector<PosTag>>& cands) {
    std::ostringstream out;
    out << "no parse; candidate tags:";
    for (const auto& tags : cands) {
      out << " [";
      for (std::size_t i = 0; i < tags.size(); ++i)
        out << (i ? " " : "") << terminal_name(to_terminal(tags[i]));
      out << "]";
    }
    return out.str();
  }

  std::vector<std::vector<PosTag>> candidates_;
};

namespace detail {

// Recursive descent with full backtracking. Matches are enumerated in
// depth-first order: productions by ordinal, positions left to right. The
// first match that consumes the whole input is the parse.
class Matcher {
 public:
  Matcher(std::span<const Token> tokens, const Grammar& grammar,
          std::vector<std::vector<PosTag>> candidates)
      : tokens_(tokens), grammar_(grammar), candidates_(std::move(candidates)) {}

  struct Match {
    ParseTree tree;
    std::size_t end;
  };

  std::vector<Match> symbol_matches(const Symbol& sym, std::size_t at) const {
    std::vector<Match> out;
    if (const Terminal* t = std::get_if<Terminal>(&sym)) {
      std::optional<PosTag> pos = to_pos(*t);
      if (!pos || at >= tokens_.size()) return out;
      const std::vector<PosTag>& cands = candidates_[at];
      if (std::find(cands.begin(), cands.end(), *pos) != cands.end())
        out.push_back(Match{ParseTree::make_word({tokens_[at], *pos}), at + 1});
      return out;
    }
    const Nonterminal& nt = std::get<Nonterminal>(sym);
    for (const Production* p : grammar_.productions_for(nt))
      for (SeqMatch& m : sequence_matches(p->rhs, 0, at))
        out.push_back(Match{ParseTree::make_phrase(*p, std::move(m.trees)), m.end});
    return out;
  }

 private:
  struct SeqMatch {
    std::vector<ParseTree> trees;
    std::size_t end;
  };

  std::vector<SeqMatch> sequence_matches(const std::vector<Symbol>& syms, std::size_t idx,
                                         std::size_t at) const {
    std::vector<SeqMatch> out;
    if (idx == syms.size()) {
      out.push_back(SeqMatch{{}, at});
      return out;
    }
    for (Match& head : symbol_matches(syms[idx], at))
      for (SeqMatch& tail : sequence_matches(syms, idx + 1, head.end)) {
        std::vector<ParseTree> trees;
        trees.reserve(1 + tail.trees.size());
        trees.push_back(head.tree);
        for (ParseTree& t : tail.trees) trees.push_back(std::move(t));
        out.push_back(SeqMatch{std::move(trees), tail.end});
      }
    return out;
  }

  std::span<const Token> tokens_;
  const Grammar& grammar_;
  std::vector<std::vector<PosTag>> candidates_;
};

}  // namespace detail

// First complete parse of the tokens under the grammar, resolving lexical
// ambiguity against the lexicon's tag candidates. Throws UnknownWordError
// for a token with no candidates, NoParseError when no tag assignment
// derives the whole input from the start symbol.
inline ParseTree parse(std::span<const Token> tokens, const Lexicon& lexicon,
                       const Grammar& grammar) {
  std::vector<std::vector<PosTag>> candidates;
  candidates.reserve(tokens.size());
  for (const Token& tok : tokens) {
    std::vector<PosTag> cands = lexicon.tag_candidates(tok.folded);
    if (cands.empty()) throw UnknownWordError(tok.surface, tok.index);
    candidates.push_back(std::move(cands));
  }
  if (tokens.empty()) throw NoParseError({});
  detail::Matcher matcher(tokens, grammar, candidates);
  for (detail::Matcher::Match& m : matcher.symbol_matches(grammar.start(), 0))
    if (m.end == tokens.size()) return std::move(m.tree);
  throw NoParseError(std::move(candidates));
}

inline ParseTree parse(const std::vector<Token>& tokens, const Lexicon& lexicon,
                       const Grammar& grammar) {
  return parse(std::span<const Token>(tokens), lexicon, grammar);
}

}  // namespace eyvp
