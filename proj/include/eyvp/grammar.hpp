#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eyvp/errors.hpp"
#include "eyvp/pos.hpp"

namespace eyvp {

class GrammarError : public Error {
 public:
  using Error::Error;
};

struct Nonterminal {
  std::string name;
  auto operator<=>(const Nonterminal&) const = default;
};

// A grammar symbol: either a terminal tag or a nonterminal by name.
using Symbol = std::variant<Terminal, Nonterminal>;

inline bool is_terminal(const Symbol& s) { return std::holds_alternative<Terminal>(s); }

inline std::string symbol_name(const Symbol& s) {
  if (const Terminal* t = std::get_if<Terminal>(&s)) return std::string(terminal_name(*t));
  return std::get<Nonterminal>(s).name;
}

struct Production {
  Nonterminal lhs;
  std::vector<Symbol> rhs;       // never empty
  std::size_t ordinal = 0;       // rank within the grammar, assigned on construction

  bool operator==(const Production&) const = default;
};

// The 4-tuple (V, Σ, ρ, γ): nonterminals, terminal tags, ordered production
// rules, start symbol. Construction rejects recursive grammars, so the
// generated language is always finite and can be materialized.
class Grammar {
 public:
  // Ordinals are assigned from the given order. Throws GrammarError on an
  // empty rhs, an undefined nonterminal, an undefined start symbol, or any
  // recursion among the nonterminals.
  Grammar(Nonterminal start, std::vector<Production> productions)
      : start_(std::move(start)), productions_(std::move(productions)) {
    if (productions_.empty()) throw GrammarError("grammar has no productions");
    for (std::size_t i = 0; i < productions_.size(); ++i) {
      productions_[i].ordinal = i;
      if (productions_[i].rhs.empty())
        throw GrammarError("empty right-hand side for " + productions_[i].lhs.name);
      defined_.insert(productions_[i].lhs.name);
    }
    for (const Production& p : productions_)
      for (const Symbol& s : p.rhs) {
        if (const Terminal* t = std::get_if<Terminal>(&s)) {
          terminals_.insert(*t);
        } else {
          const std::string& name = std::get<Nonterminal>(s).name;
          if (!defined_.contains(name))
            throw GrammarError("nonterminal " + name + " has no production");
        }
      }
    if (!defined_.contains(start_.name))
      throw GrammarError("start symbol " + start_.name + " has no production");
    check_nonrecursive();
  }

  const Nonterminal& start() const { return start_; }
  const std::vector<Production>& productions() const { return productions_; }
  const std::set<Terminal>& terminals() const { return terminals_; }
  const std::set<std::string>& nonterminals() const { return defined_; }

  // Productions of one nonterminal, in ordinal order.
  std::vector<const Production*> productions_for(const Nonterminal& nt) const {
    std::vector<const Production*> out;
    for (const Production& p : productions_)
      if (p.lhs == nt) out.push_back(&p);
    return out;
  }

  bool operator==(const Grammar& other) const {
    return start_ == other.start_ && productions_ == other.productions_;
  }

 private:
  // Dependency edges lhs -> rhs nonterminals must form a DAG.
  void check_nonrecursive() const {
    std::map<std::string, int> state;  // 0 unseen, 1 on stack, 2 done
    std::vector<std::string> stack;
    auto visit = [&](auto&& self, const std::string& name) -> void {
      int& st = state[name];
      if (st == 2) return;
      if (st == 1) {
        std::string cycle;
        auto it = std::find(stack.begin(), stack.end(), name);
        for (; it != stack.end(); ++it) cycle += *it + " -> ";
        throw GrammarError("recursive grammar: " + cycle + name);
      }
      st = 1;
      stack.push_back(name);
      for (const Production& p : productions_)
        if (p.lhs.name == name)
          for (const Symbol& s : p.rhs)
            if (const Nonterminal* nt = std::get_if<Nonterminal>(&s)) self(self, nt->name);
      stack.pop_back();
      state[name] = 2;
    };
    for (const std::string& name : defined_) visit(visit, name);
  }

  Nonterminal start_;
  std::vector<Production> productions_;
  std::set<Terminal> terminals_;
  std::set<std::string> defined_;
};

// Materializes L(grammar): every terminal sequence derivable from the start
// symbol. Finite because construction rejected recursion.
inline std::set<std::vector<Terminal>> derive_all(const Grammar& g) {
  std::map<std::string, std::set<std::vector<Terminal>>> memo;
  auto expand = [&](auto&& self, const Nonterminal& nt) -> const std::set<std::vector<Terminal>>& {
    auto found = memo.find(nt.name);
    if (found != memo.end()) return found->second;
    std::set<std::vector<Terminal>> result;
    for (const Production* p : g.productions_for(nt)) {
      std::vector<std::vector<Terminal>> partial{{}};
      for (const Symbol& s : p->rhs) {
        std::vector<std::vector<Terminal>> next;
        if (const Terminal* t = std::get_if<Terminal>(&s)) {
          for (std::vector<Terminal> seq : partial) {
            seq.push_back(*t);
            next.push_back(std::move(seq));
          }
        } else {
          const auto& sub = self(self, std::get<Nonterminal>(s));
          for (const std::vector<Terminal>& seq : partial)
            for (const std::vector<Terminal>& tail : sub) {
              std::vector<Terminal> joined = seq;
              joined.insert(joined.end(), tail.begin(), tail.end());
              next.push_back(std::move(joined));
            }
        }
        partial = std::move(next);
      }
      result.insert(partial.begin(), partial.end());
    }
    return memo.emplace(nt.name, std::move(result)).first->second;
  };
  return expand(expand, g.start());
}

// Length of the longest derivable sequence.
inline std::size_t max_derivation_length(const Grammar& g) {
  std::size_t best = 0;
  for (const std::vector<Terminal>& seq : derive_all(g)) best = std::max(best, seq.size());
  return best;
}

// The fixed English verb-phrase grammar. Longest rules first so the parser
// prefers the most-consuming reading.
inline Grammar source_grammar() {
  const Nonterminal vp{"VP"}, np{"NP"}, pp{"PP"};
  using enum Terminal;
  return Grammar(vp, {
                         {vp, {Verb, np, pp}},
                         {vp, {Verb, np, np}},
                         {vp, {Verb, np}},
                         {vp, {Verb, pp}},
                         {vp, {Verb}},
                         {np, {Det, Adj, Noun}},
                         {np, {Det, Noun}},
                         {np, {Adj, Noun}},
                         {np, {Noun}},
                         {pp, {Prep, np}},
                     });
}

// The fixed Yorùbá verb-phrase grammar: head-initial noun phrases
// (N ADJ DET) and a particle slot between ditransitive objects.
inline Grammar target_grammar() {
  const Nonterminal vp{"VP"}, np{"NP"}, pp{"PP"};
  using enum Terminal;
  return Grammar(vp, {
                         {vp, {Verb, np, pp}},
                         {vp, {Verb, np, Prt, np}},
                         {vp, {Verb, np}},
                         {vp, {Verb, pp}},
                         {vp, {Verb}},
                         {np, {Noun, Adj, Det}},
                         {np, {Noun, Det}},
                         {np, {Noun, Adj}},
                         {np, {Noun}},
                         {pp, {Prep, np}},
                     });
}

// One production per line: "VP -> V NP PP". Tokens matching a terminal name
// (V, N, ADJ, DET, P, PRON, PRT, case-insensitive) are terminals; anything
// else is a nonterminal. The start symbol is the first line's left side.
inline Grammar parse_grammar(std::string_view document) {
  std::vector<Production> productions;
  std::optional<Nonterminal> start;
  std::size_t lineno = 0;
  std::istringstream lines{std::string(document)};
  std::string raw;
  while (std::getline(lines, raw)) {
    ++lineno;
    std::string line = raw;
    // accept the unicode arrow as well
    for (std::string::size_type at; (at = line.find("\xe2\x86\x92")) != std::string::npos;)
      line.replace(at, 3, "->");
    std::string::size_type hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream words{line};
    std::vector<std::string> toks;
    std::string w;
    while (words >> w) toks.push_back(w);
    if (toks.empty()) continue;
    if (toks.size() < 3 || toks[1] != "->")
      throw GrammarError("grammar line " + std::to_string(lineno) +
                         ": expected \"LHS -> SYMBOL...\"");
    if (terminal_from_name(toks[0]))
      throw GrammarError("grammar line " + std::to_string(lineno) +
                         ": a terminal cannot appear on the left-hand side");
    Production p;
    p.lhs = Nonterminal{toks[0]};
    for (std::size_t i = 2; i < toks.size(); ++i) {
      if (std::optional<Terminal> t = terminal_from_name(toks[i]))
        p.rhs.push_back(*t);
      else
        p.rhs.push_back(Nonterminal{toks[i]});
    }
    if (!start) start = p.lhs;
    productions.push_back(std::move(p));
  }
  if (!start) throw GrammarError("grammar file has no productions");
  return Grammar(*start, std::move(productions));
}

// Inverse of parse_grammar; reloadable dump.
inline std::string format_grammar(const Grammar& g) {
  std::ostringstream out;
  for (const Production& p : g.productions()) {
    out << p.lhs.name << " ->";
    for (const Symbol& s : p.rhs) out << ' ' << symbol_name(s);
    out << '\n';
  }
  return out.str();
}

}  // namespace eyvp
