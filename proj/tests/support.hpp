#pragma once

// Shared test plumbing: file access, independent reference implementations
// used to cross-check the library, and a small phrase generator. Kept free
// of any test-framework macros so the acceptance runner can reuse it.

#include <eyvp/eyvp.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace support {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) {
  return std::string(EYVP_DATA_DIR) + "/" + name;
}

inline eyvp::Lexicon shipped_lexicon() {
  return eyvp::load_lexicon(slurp(data_path("lexicon.tsv")));
}

// Reference language expansion, deliberately different from the library's
// memoized per-nonterminal recursion: a worklist over sentential forms that
// always rewrites the leftmost nonterminal.
inline std::set<std::vector<eyvp::Terminal>> oracle_language(const eyvp::Grammar& g) {
  using Form = std::vector<eyvp::Symbol>;
  std::set<Form> seen;
  std::vector<Form> work{{eyvp::Symbol(g.start())}};
  seen.insert(work.front());
  std::set<std::vector<eyvp::Terminal>> language;
  while (!work.empty()) {
    Form form = std::move(work.back());
    work.pop_back();
    std::size_t i = 0;
    while (i < form.size() && eyvp::is_terminal(form[i])) ++i;
    if (i == form.size()) {
      std::vector<eyvp::Terminal> word;
      for (const eyvp::Symbol& s : form) word.push_back(std::get<eyvp::Terminal>(s));
      language.insert(std::move(word));
      continue;
    }
    for (const eyvp::Production* p : g.productions_for(std::get<eyvp::Nonterminal>(form[i]))) {
      Form next(form.begin(), form.begin() + i);
      next.insert(next.end(), p->rhs.begin(), p->rhs.end());
      next.insert(next.end(), form.begin() + i + 1, form.end());
      if (seen.insert(next).second) work.push_back(std::move(next));
    }
  }
  return language;
}

// Distinct nonempty residuals of the language, one per state of the minimal
// partial acceptor (Myhill-Nerode, computed on the word set directly).
inline std::size_t oracle_minimal_states(const std::set<std::vector<eyvp::Terminal>>& language) {
  using Word = std::vector<eyvp::Terminal>;
  std::set<Word> prefixes;
  for (const Word& w : language)
    for (std::size_t i = 0; i <= w.size(); ++i) prefixes.insert(Word(w.begin(), w.begin() + i));
  std::set<std::set<Word>> residuals;
  for (const Word& p : prefixes) {
    std::set<Word> r;
    for (const Word& w : language)
      if (w.size() >= p.size() && std::equal(p.begin(), p.end(), w.begin()))
        r.insert(Word(w.begin() + p.size(), w.end()));
    if (!r.empty()) residuals.insert(std::move(r));
  }
  return residuals.size();
}

inline std::size_t oracle_transition_count(const std::set<std::vector<eyvp::Terminal>>& language) {
  using Word = std::vector<eyvp::Terminal>;
  std::set<Word> prefixes;
  for (const Word& w : language)
    for (std::size_t i = 0; i <= w.size(); ++i) prefixes.insert(Word(w.begin(), w.begin() + i));
  std::set<std::set<Word>> residuals;
  for (const Word& p : prefixes) {
    std::set<Word> r;
    for (const Word& w : language)
      if (w.size() >= p.size() && std::equal(p.begin(), p.end(), w.begin()))
        r.insert(Word(w.begin() + p.size(), w.end()));
    if (!r.empty()) residuals.insert(std::move(r));
  }
  std::size_t count = 0;
  for (const std::set<Word>& r : residuals)
    for (eyvp::Terminal a : eyvp::kAllTerminals) {
      bool has = std::any_of(r.begin(), r.end(),
                             [&](const Word& w) { return !w.empty() && w.front() == a; });
      count += has;
    }
  return count;
}

// Structural soundness of a tree against a grammar: every phrase node uses
// one of the grammar's productions and its children realize the rhs in
// order. Returns the first violation, or nullopt.
inline std::optional<std::string> tree_violation(const eyvp::ParseTree& t, const eyvp::Grammar& g) {
  using eyvp::ParseTree;
  if (t.kind != ParseTree::Kind::Phrase) return std::nullopt;
  bool known = false;
  for (const eyvp::Production& p : g.productions())
    if (p == t.production) known = true;
  if (!known) return "node uses a production not in the grammar: " + t.production.lhs.name;
  if (t.children.size() != t.production.rhs.size())
    return "child count disagrees with the production rhs at " + t.production.lhs.name;
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (t.children[i].root_symbol() != t.production.rhs[i])
      return "child " + std::to_string(i) + " of " + t.production.lhs.name +
             " is " + eyvp::symbol_name(t.children[i].root_symbol()) + ", rhs wants " +
             eyvp::symbol_name(t.production.rhs[i]);
    if (auto why = tree_violation(t.children[i], g)) return why;
  }
  return std::nullopt;
}

// Random phrase whose tag readout is a chosen word of the source language:
// one lexicon word per tag, with casing, punctuation, and whitespace noise.
class PhraseGen {
 public:
  explicit PhraseGen(const eyvp::Lexicon& lexicon) {
    for (const eyvp::LexEntry& e : lexicon.entries())
      words_[eyvp::to_terminal(e.pos)].push_back(e.source);
  }

  bool covers(const std::vector<eyvp::Terminal>& tags) const {
    for (eyvp::Terminal t : tags)
      if (!words_.contains(t)) return false;
    return true;
  }

  struct Phrase {
    std::string text;
    std::vector<std::string> surfaces;  // what tokenize() should recover
  };

  Phrase make(const std::vector<eyvp::Terminal>& tags, std::mt19937& rng, bool noisy) const {
    static const char* punct[] = {".", ",", ";", ":", "!", "?", "\"", "'", "(", ")"};
    std::uniform_int_distribution<int> coin(0, 3);
    Phrase out;
    for (std::size_t i = 0; i < tags.size(); ++i) {
      const std::vector<std::string>& pool = words_.at(tags[i]);
      std::string word = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      if (noisy && coin(rng) == 0) word = eyvp::uni::capitalize_first(word);
      out.surfaces.push_back(word);
      std::string piece = word;
      if (noisy && coin(rng) == 0) piece = std::string(punct[coin(rng)]) + piece;
      if (noisy && coin(rng) == 0) piece += punct[4 + coin(rng)];
      if (i) out.text += (noisy && coin(rng) == 0) ? "  " : " ";
      out.text += piece;
    }
    if (noisy && coin(rng) == 0) out.text = " " + out.text + "\t";
    return out;
  }

 private:
  std::map<eyvp::Terminal, std::vector<std::string>> words_;
};

}  // namespace support
