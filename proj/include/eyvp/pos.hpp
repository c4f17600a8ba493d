#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace eyvp {

// Lexical categories carried by lexicon entries. Enum order is the tagging
// priority: verb readings are tried first, pronouns last.
enum class PosTag : std::uint8_t { Verb, Det, Prep, Adj, Noun, Pron };

inline constexpr std::size_t kPosTagCount = 6;

inline constexpr std::array<PosTag, kPosTagCount> kPosTagsByPriority = {
    PosTag::Verb, PosTag::Det,  PosTag::Prep,
    PosTag::Adj,  PosTag::Noun, PosTag::Pron,
};

// Names as written in lexicon files.
constexpr std::string_view pos_name(PosTag tag) {
  switch (tag) {
    case PosTag::Verb: return "verb";
    case PosTag::Det:  return "det";
    case PosTag::Prep: return "prep";
    case PosTag::Adj:  return "adj";
    case PosTag::Noun: return "noun";
    case PosTag::Pron: return "pron";
  }
  return "?";
}

// Case-insensitive; accepts the short names above plus the long spellings.
inline std::optional<PosTag> pos_from_name(std::string_view name) {
  auto eq = [&](std::string_view want) {
    if (name.size() != want.size()) return false;
    for (std::size_t i = 0; i < name.size(); ++i) {
      char c = name[i];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      if (c != want[i]) return false;
    }
    return true;
  };
  if (eq("verb")) return PosTag::Verb;
  if (eq("det") || eq("determiner")) return PosTag::Det;
  if (eq("prep") || eq("preposition")) return PosTag::Prep;
  if (eq("adj") || eq("adjective")) return PosTag::Adj;
  if (eq("noun")) return PosTag::Noun;
  if (eq("pron") || eq("pronoun")) return PosTag::Pron;
  return std::nullopt;
}

// Alphabet of the grammars and automata: the POS tags plus the particle slot
// used on the target side of ditransitive phrases ("ni"). The first six
// values mirror PosTag so conversion is a cast.
enum class Terminal : std::uint8_t { Verb, Det, Prep, Adj, Noun, Pron, Prt };

inline constexpr std::size_t kTerminalCount = 7;

inline constexpr std::array<Terminal, kTerminalCount> kAllTerminals = {
    Terminal::Verb, Terminal::Det,  Terminal::Prep, Terminal::Adj,
    Terminal::Noun, Terminal::Pron, Terminal::Prt,
};

constexpr Terminal to_terminal(PosTag tag) {
  return static_cast<Terminal>(static_cast<std::uint8_t>(tag));
}

// Prt has no POS counterpart.
constexpr std::optional<PosTag> to_pos(Terminal t) {
  if (t == Terminal::Prt) return std::nullopt;
  return static_cast<PosTag>(static_cast<std::uint8_t>(t));
}

// Short names used in grammar rules, parse-tree renderings and FSA tables.
constexpr std::string_view terminal_name(Terminal t) {
  switch (t) {
    case Terminal::Verb: return "V";
    case Terminal::Det:  return "DET";
    case Terminal::Prep: return "P";
    case Terminal::Adj:  return "ADJ";
    case Terminal::Noun: return "N";
    case Terminal::Pron: return "PRON";
    case Terminal::Prt:  return "PRT";
  }
  return "?";
}

inline std::optional<Terminal> terminal_from_name(std::string_view name) {
  auto eq = [&](std::string_view want) {
    if (name.size() != want.size()) return false;
    for (std::size_t i = 0; i < name.size(); ++i) {
      char c = name[i];
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
      if (c != want[i]) return false;
    }
    return true;
  };
  if (eq("V") || eq("VERB")) return Terminal::Verb;
  if (eq("DET") || eq("DETERMINER")) return Terminal::Det;
  if (eq("P") || eq("PREP") || eq("PREPOSITION")) return Terminal::Prep;
  if (eq("ADJ") || eq("ADJECTIVE")) return Terminal::Adj;
  if (eq("N") || eq("NOUN")) return Terminal::Noun;
  if (eq("PRON") || eq("PRONOUN")) return Terminal::Pron;
  if (eq("PRT") || eq("PARTICLE")) return Terminal::Prt;
  return std::nullopt;
}

}  // namespace eyvp
