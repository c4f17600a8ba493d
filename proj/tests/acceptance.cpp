// Release gate: every check prints one line; the process exits nonzero if
// any check fails. Budgets and thresholds are fixed here, not configurable.

#include "support.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

using namespace eyvp;

namespace {

int failures = 0;

class Timer {
 public:
  Timer() : begin_(std::chrono::steady_clock::now()) {}
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - begin_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point begin_;
};

void report(const std::string& name, bool pass, const std::string& detail) {
  std::cout << name << ": " << (pass ? "pass" : "FAIL") << " (" << detail << ")\n";
  failures += !pass;
}

void skip(const std::string& name, const std::string& why) {
  std::cout << name << ": skip (" << why << ")\n";
}

// Exactly reproduce the reference table: every scored pair must match and
// the two divergent rows must be excluded for a stated reason, within 1s.
void check_gold_reproduction() {
  Timer timer;
  std::string note;
  bool pass = false;
  try {
    Translator tr(support::shipped_lexicon());
    std::vector<GoldPair> gold = load_gold(support::slurp(support::data_path("gold_pairs.tsv")));
    std::vector<Exclusion> excl =
        load_exclusions(support::slurp(support::data_path("gold_exclusions.tsv")));
    EvalReport rep = evaluate(tr, gold, excl);
    bool reasons = true;
    for (const ExcludedRecord& x : rep.excluded) reasons = reasons && !x.reason.empty();
    long ms = timer.ms();
    pass = rep.total() == 7 && rep.matches() == 7 && rep.accuracy() == 1.0 &&
           rep.excluded.size() == 2 && reasons && ms < 1000;
    std::ostringstream d;
    d.setf(std::ios::fixed);
    d.precision(3);
    d << "accuracy " << rep.accuracy() << " on " << rep.matches() << "/" << rep.total()
      << " scored pairs, " << rep.excluded.size() << " excluded with reasons, " << ms
      << " ms, budget 1000 ms";
    note = d.str();
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  report("gold-table reproduction", pass, note);
}

Grammar random_dag_grammar(std::mt19937& rng) {
  static const Terminal alphabet[] = {Terminal::Verb, Terminal::Det, Terminal::Noun};
  std::uniform_int_distribution<int> nts(2, 3), prods(1, 2), len(1, 2), coin(0, 1), sym(0, 2);
  while (true) {
    int k = nts(rng);
    std::vector<Production> ps;
    for (int i = 0; i < k; ++i) {
      int np = prods(rng);
      for (int j = 0; j < np; ++j) {
        Production p;
        p.lhs = Nonterminal{"A" + std::to_string(i)};
        int l = len(rng);
        for (int s = 0; s < l; ++s) {
          if (i + 1 < k && coin(rng)) {
            std::uniform_int_distribution<int> below(i + 1, k - 1);
            p.rhs.push_back(Nonterminal{"A" + std::to_string(below(rng))});
          } else {
            p.rhs.push_back(alphabet[sym(rng)]);
          }
        }
        ps.push_back(std::move(p));
      }
    }
    Grammar g(Nonterminal{"A0"}, std::move(ps));
    if (max_derivation_length(g) <= 8 && derive_all(g).size() <= 500) return g;
  }
}

std::string drop_last(const std::string& table, const std::string& prefix, std::size_t fields) {
  std::vector<std::string> lines;
  std::istringstream in(table);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  for (std::size_t i = lines.size(); i-- > 0;) {
    std::size_t tabs = std::count(lines[i].begin(), lines[i].end(), '\t');
    if (tabs + 1 == fields && lines[i].starts_with(prefix)) {
      lines.erase(lines.begin() + i);
      break;
    }
  }
  std::string out;
  for (const std::string& l : lines) out += l + "\n";
  return out;
}

// The compiled automaton and its grammar must agree on every sequence up to
// the maximum derivation length (exhaustive, both built-in grammars), every
// damaged automaton must be caught, and recursion must be rejected at
// construction. Budget 30s.
void check_grammar_automaton_equivalence() {
  Timer timer;
  std::string note;
  bool pass = false;
  try {
    std::mt19937 rng(2024);
    bool builtin_ok = true;
    int mutants = 0, mutants_caught = 0;
    for (const Grammar& g : {source_grammar(), target_grammar()}) {
      Fsa fsa = compile(g);
      builtin_ok = builtin_ok && equivalent(fsa, g);
      std::string table = fsa_to_table(fsa);
      for (const std::string& mutated :
           {drop_last(table, "accept", 2), drop_last(table, "", 3)}) {
        ++mutants;
        mutants_caught += !equivalent(fsa_from_table(mutated), g);
      }
    }
    // cross-pairings must fail: the languages differ
    builtin_ok = builtin_ok && !equivalent(compile(source_grammar()), target_grammar()) &&
                 !equivalent(compile(target_grammar()), source_grammar());

    int random_ok = 0;
    const int kRandom = 25;
    for (int i = 0; i < kRandom; ++i) {
      Grammar g = random_dag_grammar(rng);
      Fsa fsa = compile(g);
      bool good = equivalent(fsa, g);
      std::string table = fsa_to_table(fsa);
      ++mutants;
      mutants_caught += !equivalent(fsa_from_table(drop_last(table, "accept", 2)), g);
      random_ok += good;
    }

    int recursive_rejected = 0;
    const int kRecursive = 100;
    std::uniform_int_distribution<int> nts(1, 4);
    for (int i = 0; i < kRecursive; ++i) {
      int k = nts(rng);
      std::vector<Production> ps;
      for (int j = 0; j < k; ++j) {
        Production p;
        p.lhs = Nonterminal{"A" + std::to_string(j)};
        p.rhs.push_back(Nonterminal{"A" + std::to_string((j + 1) % k)});
        if (std::uniform_int_distribution<int>(0, 1)(rng)) p.rhs.push_back(Terminal::Noun);
        ps.push_back(std::move(p));
      }
      try {
        Grammar g(Nonterminal{"A0"}, std::move(ps));
        (void)g;
      } catch (const GrammarError& e) {
        recursive_rejected += std::string(e.what()).find("recursive") != std::string::npos;
      }
    }

    long ms = timer.ms();
    pass = builtin_ok && random_ok == kRandom && mutants_caught == mutants &&
           recursive_rejected == kRecursive && ms < 30000;
    std::ostringstream d;
    d << "both built-in grammars exhaustively equivalent, " << random_ok << "/" << kRandom
      << " random grammars equivalent, " << mutants_caught << "/" << mutants
      << " damaged automata caught, " << recursive_rejected << "/" << kRecursive
      << " recursive grammars rejected, " << ms << " ms, budget 30000 ms";
    note = d.str();
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  report("grammar-automaton equivalence", pass, note);
}

// Every derivable source shape must parse, transfer without error, and land
// inside the target language.
void check_transfer_totality() {
  Timer timer;
  std::string note;
  bool pass = false;
  try {
    Lexicon lex = support::shipped_lexicon();
    support::PhraseGen gen(lex);
    std::mt19937 rng(5);
    Grammar src = source_grammar(), tgt = target_grammar();
    TransferRuleSet rules = builtin_transfer_rules();
    std::set<std::vector<Terminal>> target_lang = derive_all(tgt);
    std::size_t total = 0, good = 0;
    for (const std::vector<Terminal>& tags : derive_all(src)) {
      ++total;
      ParseTree t = parse(tokenize(gen.make(tags, rng, false).text), lex, src);
      ParseTree moved = transfer_tree(t, rules, tgt);
      bool ok = !support::tree_violation(moved, tgt) && target_lang.contains(tag_sequence(moved));
      good += ok;
    }
    pass = total == 41 && good == total;
    std::ostringstream d;
    d << good << "/" << total << " source shapes transferred into the target language, "
      << timer.ms() << " ms";
    note = d.str();
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  report("transfer totality", pass, note);
}

// Parse trees of random phrases must be structurally sound; malformed input
// must raise the typed errors and never crash.
void check_parse_tree_invariants() {
  Timer timer;
  std::string note;
  bool pass = false;
  try {
    Lexicon lex = support::shipped_lexicon();
    support::PhraseGen gen(lex);
    Grammar src = source_grammar();
    std::set<std::vector<Terminal>> lang = derive_all(src);
    std::vector<std::vector<Terminal>> shapes(lang.begin(), lang.end());
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::size_t> pick(0, shapes.size() - 1);

    const int kValid = 10000;
    int valid_ok = 0;
    std::string first_violation;
    for (int i = 0; i < kValid; ++i) {
      const std::vector<Terminal>& tags = shapes[pick(rng)];
      support::PhraseGen::Phrase phrase = gen.make(tags, rng, true);
      std::vector<Token> toks = tokenize(phrase.text);
      ParseTree t = parse(toks, lex, src);
      bool ok = toks.size() == phrase.surfaces.size();
      std::vector<const ParseTree*> ls = leaves(t);
      ok = ok && ls.size() == toks.size();
      for (std::size_t j = 0; ok && j < ls.size(); ++j)
        ok = ls[j]->word.token.surface == phrase.surfaces[j] && ls[j]->word.token.index == j;
      ok = ok && !support::tree_violation(t, src);
      ok = ok && lang.contains(tag_sequence(t)) && tag_sequence(t) == tags;
      if (!ok && first_violation.empty()) first_violation = phrase.text;
      valid_ok += ok;
    }

    const int kBad = 2000;
    int bad_ok = 0;
    for (int i = 0; i < kBad; ++i) {
      std::vector<Terminal> tags = shapes[pick(rng)];
      support::PhraseGen::Phrase phrase = gen.make(tags, rng, false);
      if (i % 2) {
        // inject a word the lexicon cannot tag
        std::vector<std::string> words = detail::split_spaces(phrase.text);
        std::size_t at = std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng);
        words[at] = "zkq" + std::to_string(i);
        std::string text;
        for (const std::string& w : words) text += (text.empty() ? "" : " ") + w;
        try {
          parse(tokenize(text), lex, src);
        } catch (const UnknownWordError& e) {
          bad_ok += e.surface() == words[at] && e.index() == at;
        }
      } else {
        // reverse the phrase; reversed shapes never start with V
        std::vector<std::string> words = detail::split_spaces(phrase.text);
        if (words.size() < 2) {
          ++bad_ok;
          continue;
        }
        std::reverse(words.begin(), words.end());
        std::string text;
        for (const std::string& w : words) text += (text.empty() ? "" : " ") + w;
        try {
          parse(tokenize(text), lex, src);
        } catch (const NoParseError& e) {
          bad_ok += e.candidates().size() == words.size();
        }
      }
    }

    pass = valid_ok == kValid && bad_ok == kBad;
    std::ostringstream d;
    d << valid_ok << "/" << kValid << " random phrases parsed with sound trees, " << bad_ok << "/"
      << kBad << " malformed inputs raised typed errors, " << timer.ms() << " ms";
    if (!first_violation.empty()) d << ", first violation: \"" << first_violation << "\"";
    note = d.str();
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  report("parse-tree invariants", pass, note);
}

// The word-for-word channel must translate token by token in source order,
// passing unknown words through, and the rule channel must use exactly the
// same word material plus inserted particles.
void check_word_for_word_contract() {
  Timer timer;
  std::string note;
  bool pass = false;
  try {
    Lexicon lex = support::shipped_lexicon();
    Translator tr(lex);
    support::PhraseGen gen(lex);
    Grammar src = source_grammar();
    std::set<std::vector<Terminal>> lang = derive_all(src);
    std::vector<std::vector<Terminal>> shapes(lang.begin(), lang.end());
    std::mt19937 rng(41);
    std::uniform_int_distribution<std::size_t> pick(0, shapes.size() - 1);
    std::uniform_int_distribution<int> coin(0, 3);

    const int kRounds = 2000;
    int contract_ok = 0, permutation_ok = 0, permutation_total = 0;
    for (int i = 0; i < kRounds; ++i) {
      support::PhraseGen::Phrase phrase = gen.make(shapes[pick(rng)], rng, true);
      std::vector<std::string> words = detail::split_spaces(phrase.text);
      if (coin(rng) == 0) {
        std::size_t at = std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng);
        words[at] = "qzj" + std::to_string(i);
      }
      std::string text;
      for (const std::string& w : words) text += (text.empty() ? "" : " ") + w;

      std::vector<Token> toks = tokenize(text);
      Translation t = tr.translate(text);

      // independent per-token reference
      std::vector<std::string> expect;
      std::vector<std::string> expect_unknown;
      for (const Token& tok : toks) {
        std::vector<PosTag> cands = lex.tag_candidates(tok.surface);
        if (cands.empty()) {
          expect.push_back(tok.surface);
          expect_unknown.push_back(tok.surface);
          continue;
        }
        std::string word = *lex.lookup(tok.surface, cands.front());
        std::stringstream pieces(word);
        std::string piece;
        while (pieces >> piece) expect.push_back(piece);
      }
      bool ok = t.w4w_tokens == expect && t.unknowns == expect_unknown;
      contract_ok += ok;

      if (t.ok()) {
        ++permutation_total;
        std::multiset<std::string> rule_side(t.rule_tokens.begin(), t.rule_tokens.end());
        std::multiset<std::string> w4w_side(t.w4w_tokens.begin(), t.w4w_tokens.end());
        for (const ParseTree* leaf : leaves(*t.target_tree))
          if (leaf->kind == ParseTree::Kind::Particle) w4w_side.insert(leaf->particle);
        permutation_ok += rule_side == w4w_side;
      }
    }
    pass = contract_ok == kRounds && permutation_ok == permutation_total && permutation_total > 0;
    std::ostringstream d;
    d << contract_ok << "/" << kRounds << " word-for-word outputs match the reference, "
      << permutation_ok << "/" << permutation_total
      << " rule outputs are word-for-word permutations plus particles, " << timer.ms() << " ms";
    note = d.str();
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  report("word-for-word contract", pass, note);
}

}  // namespace

int main() {
  check_gold_reproduction();
  check_grammar_automaton_equivalence();
  check_transfer_totality();
  check_parse_tree_invariants();
  check_word_for_word_contract();
  skip("human preference survey", "needs human raters; no machine-checkable artifact");
  return failures == 0 ? 0 : 1;
}
