// Command-line front end: translate, eval, fsa, grammar-dump.
// Exit codes: 0 success, 1 usage or data error, 2 translation failures.

#include <CLI11.hpp>
#include <json.hpp>

#include <eyvp/eyvp.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw eyvp::Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

eyvp::Grammar load_source_grammar(const std::string& grammar_path) {
  if (grammar_path.empty()) return eyvp::source_grammar();
  return eyvp::parse_grammar(slurp(grammar_path));
}

json to_json(const eyvp::Translation& t, bool strip) {
  json j;
  j["source"] = t.source;
  j["status"] = std::string(eyvp::status_name(t.status));
  if (!t.ok()) j["error"] = t.error;
  j["w4w"] = t.w4w_text(strip);
  j["rule"] = t.ok() ? json(t.rule_text(strip)) : json(nullptr);
  j["unknowns"] = t.unknowns;
  json tags = json::array();
  for (eyvp::PosTag tag : t.source_tags)
    tags.push_back(std::string(eyvp::terminal_name(eyvp::to_terminal(tag))));
  j["tags"] = tags;
  j["tree"] = t.target_tree ? json(eyvp::bracket(*t.target_tree)) : json(nullptr);
  return j;
}

struct TranslateOptions {
  std::string lexicon_path = "data/lexicon.tsv";
  std::string grammar_path;
  std::string batch_path;
  std::string format = "text";
  std::vector<std::string> words;
  bool show_tree = false;
  bool strip = false;
  bool w4w_only = false;
};

int run_translate(const TranslateOptions& opt) {
  eyvp::Translator translator(eyvp::load_lexicon(slurp(opt.lexicon_path)),
                              load_source_grammar(opt.grammar_path), eyvp::target_grammar());

  std::vector<std::string> inputs;
  if (!opt.batch_path.empty()) {
    std::istringstream lines(slurp(opt.batch_path));
    std::string line;
    while (std::getline(lines, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      inputs.push_back(line);
    }
  }
  if (!opt.words.empty()) {
    std::string joined;
    for (std::size_t i = 0; i < opt.words.size(); ++i) {
      if (i) joined += ' ';
      joined += opt.words[i];
    }
    inputs.push_back(joined);
  }
  if (inputs.empty()) {
    std::cerr << "error: no input; pass a phrase or --batch FILE\n";
    return 1;
  }

  bool failures = false;
  for (const std::string& input : inputs) {
    eyvp::Translation t = translator.translate(input);
    bool failed = opt.w4w_only ? t.status == eyvp::TranslateStatus::EmptyInput : !t.ok();
    if (failed) failures = true;
    if (opt.format == "json") {
      std::cout << to_json(t, opt.strip).dump() << '\n';
      continue;
    }
    if (failed) {
      std::cerr << "error: " << t.error << " [" << t.source << "]\n";
      continue;
    }
    std::cout << (opt.w4w_only ? t.w4w_text(opt.strip) : t.rule_text(opt.strip)) << '\n';
    if (opt.show_tree && t.target_tree) std::cout << eyvp::bracket(*t.target_tree) << '\n';
  }
  return failures ? 2 : 0;
}

struct EvalOptions {
  std::string lexicon_path = "data/lexicon.tsv";
  std::string grammar_path;
  std::string exclude_path;
  std::string gold_path;
  bool strict = false;
};

int run_eval(const EvalOptions& opt) {
  eyvp::Translator translator(eyvp::load_lexicon(slurp(opt.lexicon_path)),
                              load_source_grammar(opt.grammar_path), eyvp::target_grammar());
  std::vector<eyvp::GoldPair> gold = eyvp::load_gold(slurp(opt.gold_path));
  std::vector<eyvp::Exclusion> exclusions;
  if (!opt.exclude_path.empty()) exclusions = eyvp::load_exclusions(slurp(opt.exclude_path));

  eyvp::EvalReport report = eyvp::evaluate(translator, gold, exclusions, opt.strict);
  for (const eyvp::EvalRecord& r : report.records) {
    if (r.match) {
      std::cout << "PASS " << r.source << " => " << r.got << '\n';
    } else if (r.status == eyvp::TranslateStatus::Ok) {
      std::cout << "FAIL " << r.source << " => " << r.got << " (expected " << r.expected << ")\n";
    } else {
      std::cout << "FAIL " << r.source << " => <" << eyvp::status_name(r.status) << "> (expected "
                << r.expected << ")\n";
    }
  }
  for (const eyvp::ExcludedRecord& x : report.excluded)
    std::cout << "SKIP " << x.source << ": " << x.reason << '\n';

  std::ostringstream acc;
  acc.setf(std::ios::fixed);
  acc.precision(3);
  acc << report.accuracy();
  std::cout << "accuracy " << report.matches() << "/" << report.total() << " = " << acc.str()
            << " (" << report.excluded.size() << " excluded)\n";
  return report.perfect() ? 0 : 2;
}

struct FsaOptions {
  bool source = false;
  bool target = false;
  std::string grammar_path;
  std::string out_path;
};

int run_fsa(const FsaOptions& opt) {
  int picked = int(opt.source) + int(opt.target) + int(!opt.grammar_path.empty());
  if (picked != 1) {
    std::cerr << "error: pick exactly one of --source, --target, --grammar FILE\n";
    return 1;
  }
  eyvp::Grammar grammar = opt.source    ? eyvp::source_grammar()
                          : opt.target  ? eyvp::target_grammar()
                                        : eyvp::parse_grammar(slurp(opt.grammar_path));
  eyvp::Fsa fsa = eyvp::compile(grammar);
  std::string table = eyvp::fsa_to_table(fsa);
  if (opt.out_path.empty()) {
    std::cout << table;
  } else {
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw eyvp::Error("cannot write file: " + opt.out_path);
    out << table;
  }
  std::cerr << "states " << fsa.state_count() << ", transitions " << fsa.transition_count()
            << ", words " << eyvp::derive_all(grammar).size() << '\n';
  return 0;
}

int run_grammar_dump(bool source, bool target) {
  if (source == target) {
    std::cerr << "error: pick exactly one of --source, --target\n";
    return 1;
  }
  std::cout << eyvp::format_grammar(source ? eyvp::source_grammar() : eyvp::target_grammar());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"English to Yoruba verb-phrase translator"};
  app.require_subcommand(1);

  TranslateOptions topt;
  CLI::App* translate = app.add_subcommand("translate", "Translate verb phrases");
  translate->add_option("--lexicon", topt.lexicon_path, "Lexicon TSV")->capture_default_str();
  translate->add_option("--grammar", topt.grammar_path, "Source grammar file override");
  translate->add_option("--batch", topt.batch_path, "File with one phrase per line");
  translate->add_option("--format", topt.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  translate->add_flag("--show-tree", topt.show_tree, "Also print the target-side tree");
  translate->add_flag("--strip-diacritics", topt.strip, "Emit diacritic-free output");
  translate->add_flag("--w4w-only", topt.w4w_only, "Word-for-word channel only");
  translate->add_option("text", topt.words, "Phrase to translate");

  EvalOptions eopt;
  CLI::App* eval = app.add_subcommand("eval", "Score against a gold table");
  eval->add_option("--lexicon", eopt.lexicon_path, "Lexicon TSV")->capture_default_str();
  eval->add_option("--grammar", eopt.grammar_path, "Source grammar file override");
  eval->add_option("--exclude", eopt.exclude_path, "Exclusion TSV (source, reason)");
  eval->add_flag("--strict-diacritics", eopt.strict, "Compare with diacritics kept");
  eval->add_option("gold", eopt.gold_path, "Gold TSV (source, expected)")->required();

  FsaOptions fopt;
  CLI::App* fsa = app.add_subcommand("fsa", "Compile a grammar to an automaton table");
  fsa->add_flag("--source", fopt.source, "Built-in source grammar");
  fsa->add_flag("--target", fopt.target, "Built-in target grammar");
  fsa->add_option("--grammar", fopt.grammar_path, "Grammar file");
  fsa->add_option("-o,--output", fopt.out_path, "Write the table here instead of stdout");

  bool dump_source = false, dump_target = false;
  CLI::App* dump = app.add_subcommand("grammar-dump", "Print a built-in grammar");
  dump->add_flag("--source", dump_source, "Source grammar");
  dump->add_flag("--target", dump_target, "Target grammar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*translate) return run_translate(topt);
    if (*eval) return run_eval(eopt);
    if (*fsa) return run_fsa(fopt);
    if (*dump) return run_grammar_dump(dump_source, dump_target);
  } catch (const eyvp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
