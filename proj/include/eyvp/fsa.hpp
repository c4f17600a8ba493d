#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "eyvp/errors.hpp"
#include "eyvp/grammar.hpp"
#include "eyvp/pos.hpp"

namespace eyvp {

class FsaError : public Error {
 public:
  using Error::Error;
};

// Deterministic acyclic automaton over tag symbols. Transitions are a
// partial map; a missing transition rejects. compile() output is minimized:
// every state is reachable, useful, and no two states share a residual
// language.
class Fsa {
 public:
  using State = std::size_t;

  // Throws FsaError on out-of-range ids or a cycle.
  Fsa(std::size_t state_count, State start, std::set<State> accepting,
      const std::map<std::pair<State, Terminal>, State>& transitions)
      : next_(state_count), start_(start), accepting_(state_count, false) {
    if (start >= state_count) throw FsaError("start state out of range");
    for (State s : accepting) {
      if (s >= state_count) throw FsaError("accepting state out of range");
      accepting_[s] = true;
    }
    for (const auto& [key, to] : transitions) {
      auto [from, sym] = key;
      if (from >= state_count || to >= state_count)
        throw FsaError("transition state out of range");
      next_[from][sym] = to;
    }
    check_acyclic();
  }

  std::size_t state_count() const { return next_.size(); }

  std::size_t transition_count() const {
    std::size_t n = 0;
    for (const auto& m : next_) n += m.size();
    return n;
  }

  State start() const { return start_; }
  bool is_accepting(State s) const { return accepting_[s]; }

  const std::map<Terminal, State>& transitions_from(State s) const { return next_[s]; }

  std::optional<State> step(State s, Terminal sym) const {
    auto it = next_[s].find(sym);
    if (it == next_[s].end()) return std::nullopt;
    return it->second;
  }

  // Symbols that label at least one transition.
  std::set<Terminal> alphabet() const {
    std::set<Terminal> out;
    for (const auto& m : next_)
      for (const auto& [sym, to] : m) out.insert(sym);
    return out;
  }

  bool accepts(std::span<const Terminal> sequence) const {
    State s = start_;
    for (Terminal sym : sequence) {
      std::optional<State> n = step(s, sym);
      if (!n) return false;
      s = *n;
    }
    return accepting_[s];
  }
  bool accepts(const std::vector<Terminal>& sequence) const {
    return accepts(std::span<const Terminal>(sequence));
  }

  // Longest path from the start state; an upper bound on accepted length.
  std::size_t max_word_length() const {
    std::vector<int> depth(next_.size(), -1);
    auto walk = [&](auto&& self, State s) -> int {
      if (depth[s] >= 0) return depth[s];
      int best = 0;
      for (const auto& [sym, to] : next_[s]) best = std::max(best, 1 + self(self, to));
      return depth[s] = best;
    };
    return static_cast<std::size_t>(walk(walk, start_));
  }

  bool operator==(const Fsa& other) const {
    return start_ == other.start_ && accepting_ == other.accepting_ && next_ == other.next_;
  }

 private:
  void check_acyclic() const {
    std::vector<int> state(next_.size(), 0);  // 0 unseen, 1 on stack, 2 done
    auto visit = [&](auto&& self, State s) -> void {
      if (state[s] == 2) return;
      if (state[s] == 1) throw FsaError("automaton contains a cycle");
      state[s] = 1;
      for (const auto& [sym, to] : next_[s]) self(self, to);
      state[s] = 2;
    };
    for (State s = 0; s < next_.size(); ++s) visit(visit, s);
  }

  std::vector<std::map<Terminal, State>> next_;
  State start_;
  std::vector<bool> accepting_;
};

// Minimal automaton with the same language: unreachable and dead states
// dropped, states with equal residual languages merged, ids renumbered in
// breadth-first order from the start.
inline Fsa minimize(const Fsa& fsa) {
  const std::size_t n = fsa.state_count();

  // States whose residual language is non-empty. Acyclic, so one postorder
  // pass settles it.
  std::vector<int> useful(n, -1);
  auto useful_walk = [&](auto&& self, Fsa::State s) -> bool {
    if (useful[s] >= 0) return useful[s] != 0;
    bool ok = fsa.is_accepting(s);
    for (const auto& [sym, to] : fsa.transitions_from(s))
      if (self(self, to)) ok = true;
    useful[s] = ok ? 1 : 0;
    return ok;
  };
  for (Fsa::State s = 0; s < n; ++s) useful_walk(useful_walk, s);

  // Merge by right language: two states are equivalent iff they agree on
  // acceptance and their pruned successor signatures match.
  using Signature = std::pair<bool, std::vector<std::pair<Terminal, std::size_t>>>;
  std::map<Signature, std::size_t> canon_of_sig;
  std::vector<std::size_t> canon(n, 0);
  std::vector<int> done(n, 0);
  auto merge_walk = [&](auto&& self, Fsa::State s) -> std::size_t {
    if (done[s]) return canon[s];
    Signature sig;
    sig.first = fsa.is_accepting(s);
    for (const auto& [sym, to] : fsa.transitions_from(s))
      if (useful[to]) sig.second.emplace_back(sym, self(self, to));
    auto [it, inserted] = canon_of_sig.try_emplace(sig, canon_of_sig.size());
    canon[s] = it->second;
    done[s] = 1;
    return canon[s];
  };

  if (!useful[fsa.start()]) {
    // empty language: a lone start state
    return Fsa(1, 0, {}, {});
  }
  merge_walk(merge_walk, fsa.start());

  // Renumber canonical classes reachable from the start, BFS order.
  std::map<std::size_t, Fsa::State> id_of_class;
  std::vector<Fsa::State> order;  // representative original state per new id
  std::map<std::pair<Fsa::State, Terminal>, Fsa::State> transitions;
  std::set<Fsa::State> accepting;
  id_of_class[canon[fsa.start()]] = 0;
  order.push_back(fsa.start());
  for (std::size_t head = 0; head < order.size(); ++head) {
    Fsa::State rep = order[head];
    if (fsa.is_accepting(rep)) accepting.insert(head);
    for (const auto& [sym, to] : fsa.transitions_from(rep)) {
      if (!useful[to]) continue;
      auto [it, inserted] = id_of_class.try_emplace(canon[to], order.size());
      if (inserted) order.push_back(to);
      transitions[{head, sym}] = it->second;
    }
  }
  return Fsa(order.size(), 0, std::move(accepting), transitions);
}

// Compiles a (non-recursive) grammar to the minimal automaton accepting
// exactly derive_all(grammar): enumerate the finite language, build a trie,
// merge equivalent suffix states.
inline Fsa compile(const Grammar& grammar) {
  std::set<std::vector<Terminal>> language = derive_all(grammar);
  std::vector<std::map<Terminal, Fsa::State>> trie(1);
  std::set<Fsa::State> accepting;
  for (const std::vector<Terminal>& word : language) {
    Fsa::State s = 0;
    for (Terminal sym : word) {
      auto it = trie[s].find(sym);
      if (it == trie[s].end()) {
        trie.push_back({});
        it = trie[s].emplace(sym, trie.size() - 1).first;
      }
      s = it->second;
    }
    accepting.insert(s);
  }
  std::map<std::pair<Fsa::State, Terminal>, Fsa::State> transitions;
  for (Fsa::State s = 0; s < trie.size(); ++s)
    for (const auto& [sym, to] : trie[s]) transitions[{s, sym}] = to;
  return minimize(Fsa(trie.size(), 0, std::move(accepting), transitions));
}

// Exhaustive language comparison: every sequence over the combined alphabet
// up to the longer of the two maximum lengths must be accepted by the
// automaton iff the grammar derives it. Both sides are finite.
inline bool equivalent(const Fsa& fsa, const Grammar& grammar) {
  const std::set<std::vector<Terminal>> language = derive_all(grammar);
  std::set<Terminal> alphabet = fsa.alphabet();
  alphabet.insert(grammar.terminals().begin(), grammar.terminals().end());
  std::size_t max_len = std::max(max_derivation_length(grammar), fsa.max_word_length());

  std::vector<Terminal> seq;
  auto walk = [&](auto&& self, std::optional<Fsa::State> state) -> bool {
    bool fsa_accepts = state && fsa.is_accepting(*state);
    if (fsa_accepts != language.contains(seq)) return false;
    if (seq.size() == max_len) return true;
    for (Terminal sym : alphabet) {
      seq.push_back(sym);
      std::optional<Fsa::State> next = state ? fsa.step(*state, sym) : std::nullopt;
      bool ok = self(self, next);
      seq.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return walk(walk, fsa.start());
}

inline std::size_t state_count(const Fsa& fsa) { return fsa.state_count(); }

// Plain-text transition table:
//   states <TAB> N
//   start  <TAB> id
//   accept <TAB> id          (one line per accepting state)
//   from <TAB> SYMBOL <TAB> to
// Lines are emitted in that order; #-comments and blank lines are ignored
// on input.
inline std::string fsa_to_table(const Fsa& fsa) {
  std::ostringstream out;
  out << "states\t" << fsa.state_count() << '\n';
  out << "start\t" << fsa.start() << '\n';
  for (Fsa::State s = 0; s < fsa.state_count(); ++s)
    if (fsa.is_accepting(s)) out << "accept\t" << s << '\n';
  for (Fsa::State s = 0; s < fsa.state_count(); ++s)
    for (const auto& [sym, to] : fsa.transitions_from(s))
      out << s << '\t' << terminal_name(sym) << '\t' << to << '\n';
  return out.str();
}

inline Fsa fsa_from_table(std::string_view document) {
  std::optional<std::size_t> state_count;
  std::optional<Fsa::State> start;
  std::set<Fsa::State> accepting;
  std::map<std::pair<Fsa::State, Terminal>, Fsa::State> transitions;

  std::istringstream lines{std::string(document)};
  std::string raw;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw FsaError("fsa table line " + std::to_string(lineno) + ": " + what);
  };
  auto to_id = [&](const std::string& field) -> std::size_t {
    try {
      std::size_t used = 0;
      std::size_t v = std::stoul(field, &used);
      if (used != field.size()) fail("bad state id '" + field + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad state id '" + field + "'");
    }
    return 0;
  };
  while (std::getline(lines, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      std::size_t tab = raw.find('\t', pos);
      if (tab == std::string::npos) {
        fields.push_back(raw.substr(pos));
        break;
      }
      fields.push_back(raw.substr(pos, tab - pos));
      pos = tab + 1;
    }
    if (fields.size() == 2 && fields[0] == "states") {
      state_count = to_id(fields[1]);
    } else if (fields.size() == 2 && fields[0] == "start") {
      start = to_id(fields[1]);
    } else if (fields.size() == 2 && fields[0] == "accept") {
      accepting.insert(to_id(fields[1]));
    } else if (fields.size() == 3) {
      std::optional<Terminal> sym = terminal_from_name(fields[1]);
      if (!sym) fail("unknown symbol '" + fields[1] + "'");
      auto key = std::make_pair(to_id(fields[0]), *sym);
      auto [it, inserted] = transitions.emplace(key, to_id(fields[2]));
      if (!inserted) fail("duplicate transition for state " + fields[0] + " on " + fields[1]);
    } else {
      fail("unrecognized line");
    }
  }
  if (!state_count) throw FsaError("fsa table: missing 'states' line");
  if (!start) throw FsaError("fsa table: missing 'start' line");
  return Fsa(*state_count, *start, std::move(accepting), transitions);
}

}  // namespace eyvp
