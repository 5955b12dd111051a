// seqdec: evaluate, compile, analyse and identify decision rules.
//
// Exit codes: 0 ok, 1 axiom failure or identification mismatch, 2 input
// error, 3 divergence, exhausted budget or horizon violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "seqdec/analysis.hpp"
#include "seqdec/errors.hpp"
#include "seqdec/io.hpp"

using namespace seqdec;

namespace {

enum Exit { kOk = 0, kFail = 1, kInput = 2, kResource = 3 };

struct Options {
  std::string rule_path;
  std::vector<std::string> sequences;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> budget;
  bool minimize = false;
  std::string dot_path;
  std::string out_path;
  std::string suite = "all";
  std::string as;
  std::string format = "text";
};

struct Loaded {
  Rule rule;
  std::optional<DecisionAutomaton> automaton;
  std::optional<RuleSpec> spec;
};

Loaded load(const Options& opt) {
  const Document doc = document_from_json(read_json_file(opt.rule_path));
  if (const auto* spec = std::get_if<RuleSpec>(&doc)) {
    DecisionAutomaton aut = compile_spec(*spec);
    return {Rule::from_automaton(aut), std::move(aut), *spec};
  }
  if (const auto* aut = std::get_if<DecisionAutomaton>(&doc)) return {Rule::from_automaton(*aut), *aut, std::nullopt};
  if (!opt.horizon || !opt.budget) throw InvalidArgument("machine rules need --horizon and --budget");
  return {tm_rule(std::get<TwoTapeTm>(doc), *opt.horizon, *opt.budget), std::nullopt, std::nullopt};
}

/// The rule's automaton, or a prefix-tree automaton synthesised from a
/// black-box rule's observed decisions.
DecisionAutomaton automaton_of(const Loaded& l) {
  if (l.automaton) return *l.automaton;
  const std::size_t depth = std::max<std::size_t>(uniform_bound_search(l.rule), 1);
  return from_prefix_function(l.rule.alphabet(), l.rule.decisions(), depth,
                              [&](const Word& w) { return l.rule.decide(Sequence(l.rule.alphabet(), w, {0})); });
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_path);
  if (!out) throw InvalidArgument("cannot write '" + opt.out_path + "'");
  out << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Progress lines go to stderr when the payload owns stdout.
std::ostream& info(const Options& opt) { return opt.out_path.empty() ? std::cerr : std::cout; }

int cmd_eval(const Options& opt) {
  const Loaded l = load(opt);
  const Sequence seq = parse_sequence(l.rule.alphabet(), opt.sequences.at(0));
  const Decision d = l.rule.decide(seq);
  const std::size_t k = stopping_time(l.rule, seq);
  const std::string& name = l.rule.decisions()->name(d);
  const std::string prefix = format_segment(prefix_of(seq, k));
  if (opt.format == "json") {
    emit(opt, dump(Json{{"decision", name}, {"stop", k}, {"prefix", prefix}}));
  } else {
    emit(opt, "decision " + name + "\nstop " + std::to_string(k) + "\nprefix " + prefix + "\n");
  }
  return kOk;
}

int cmd_compile(const Options& opt, bool force_minimize) {
  const Loaded l = load(opt);
  DecisionAutomaton aut = automaton_of(l);
  if (opt.minimize || force_minimize) aut = minimize(aut);
  const std::size_t bound = require_uniform_bound(aut);
  emit(opt, dump(automaton_to_json(aut)));
  if (!opt.dot_path.empty()) write_file(opt.dot_path, to_dot(aut));
  info(opt) << aut.state_count() << " states, bound " << bound << "\n";
  return kOk;
}

int cmd_dot(const Options& opt) {
  const Loaded l = load(opt);
  DecisionAutomaton aut = automaton_of(l);
  if (opt.minimize) aut = minimize(aut);
  emit(opt, to_dot(aut));
  return kOk;
}

int cmd_analyze(const Options& opt) {
  const Loaded l = load(opt);
  const auto& X = l.rule.alphabet();
  const auto& Y = l.rule.decisions();
  Json doc;
  if (l.automaton) doc["states"] = l.automaton->state_count();
  doc["bound"] = uniform_bound_search(l.rule);
  Json ms = Json::array();
  for (const auto& m : enumerate_minimal_sufficient(l.rule)) {
    ms.push_back({{"segment", format_segment(m.segment)}, {"decision", Y->name(m.decision)}});
  }
  doc["minimal_sufficient"] = std::move(ms);
  if (l.rule.is_choice_rule()) {
    const DecisiveSet D = decisive_set(l.rule);
    Json decisive = Json::array();
    for (Symbol x = 0; x < X->size(); ++x) {
      if (contains(D.decisive, x)) decisive.push_back(X->name(x));
    }
    doc["decisive"] = std::move(decisive);
  }
  if (!opt.sequences.empty()) {
    Json stops = Json::array();
    for (const auto& text : opt.sequences) {
      const Sequence seq = parse_sequence(X, text);
      stops.push_back({{"sequence", format_sequence(seq)},
                       {"decision", Y->name(l.rule.decide(seq))},
                       {"stop", stopping_time(l.rule, seq)}});
    }
    doc["stopping_times"] = std::move(stops);
  }
  emit(opt, dump(doc));
  return kOk;
}

int cmd_axioms(const Options& opt) {
  const Loaded l = load(opt);
  Suite suite = Suite::All;
  if (opt.suite == "csr") suite = Suite::Csr;
  if (opt.suite == "osr") suite = Suite::Osr;
  if (opt.suite == "config") suite = Suite::Config;
  Json out = Json::array();
  bool all_pass = true;
  for (const auto& r : run_suite(l.rule, suite)) {
    all_pass = all_pass && r.passed();
    out.push_back(report_to_json(r, *l.rule.alphabet()));
  }
  emit(opt, dump(out));
  return all_pass ? kOk : kFail;
}

int cmd_identify(const Options& opt) {
  const Loaded l = load(opt);
  if (opt.as == "csr") {
    auto id = identify_csr(l.rule);
    emit(opt, dump(rule_spec_to_json(id.spec)));
    info(opt) << "agrees on " << id.checked << " sequences\n";
  } else {
    auto id = identify_osr(l.rule);
    emit(opt, dump(rule_spec_to_json(id.spec)));
    info(opt) << "agrees on " << id.checked << " sequences\n";
  }
  return kOk;
}

int cmd_tm_run(const Options& opt) {
  if (!opt.budget) throw InvalidArgument("tm-run needs --budget");
  const TwoTapeTm tm = tm_from_json(read_json_file(opt.rule_path));
  const Sequence seq = parse_sequence(tm.input_alphabet(), opt.sequences.at(0));
  const TmRun r = tm_run(tm, seq, *opt.budget);
  emit(opt, dump(Json{{"decision", tm.tape_symbols()[*r.decision]}, {"steps", r.steps}, {"halted", r.halted}}));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision rules over infinite sequences"};
  app.require_subcommand(1);
  Options opt;

  auto rule_arg = [&](CLI::App* sub) {
    sub->add_option("rule", opt.rule_path, "Rule, automaton or machine JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--horizon", opt.horizon, "Declared horizon of a machine rule")->check(CLI::PositiveNumber);
    sub->add_option("--budget", opt.budget, "Step budget per machine run")->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out_path, "Write the payload here instead of stdout");
  };

  auto* eval = app.add_subcommand("eval", "Decision, stopping time and minimal sufficient prefix");
  rule_arg(eval);
  eval->add_option("sequence", opt.sequences, "Sequence as 'prefix|cycle'")->required()->expected(1);
  eval->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));

  auto* compile = app.add_subcommand("compile", "Compile to a decision automaton");
  rule_arg(compile);
  compile->add_flag("--minimize", opt.minimize);
  compile->add_option("--dot", opt.dot_path, "Also write Graphviz output");

  auto* minimize_cmd = app.add_subcommand("minimize", "Compile and minimize");
  rule_arg(minimize_cmd);
  minimize_cmd->add_option("--dot", opt.dot_path, "Also write Graphviz output");

  auto* dot = app.add_subcommand("dot", "Graphviz rendering");
  rule_arg(dot);
  dot->add_flag("--minimize", opt.minimize);

  auto* analyze = app.add_subcommand("analyze", "Uniform bound, minimal sufficient segments, stopping times");
  rule_arg(analyze);
  analyze->add_option("sequence", opt.sequences, "Sequences to report stopping times for");

  auto* axioms = app.add_subcommand("axioms", "Check behavioural axioms");
  rule_arg(axioms);
  axioms->add_option("--suite", opt.suite)->check(CLI::IsMember({"csr", "osr", "config", "all"}));

  auto* identify = app.add_subcommand("identify", "Recover satisficing parameters");
  rule_arg(identify);
  identify->add_option("--as", opt.as)->required()->check(CLI::IsMember({"csr", "osr"}));

  auto* tm_run_cmd = app.add_subcommand("tm-run", "Run a two-tape machine");
  rule_arg(tm_run_cmd);
  tm_run_cmd->add_option("sequence", opt.sequences, "Sequence as 'prefix|cycle'")->required()->expected(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (eval->parsed()) return cmd_eval(opt);
    if (compile->parsed()) return cmd_compile(opt, false);
    if (minimize_cmd->parsed()) return cmd_compile(opt, true);
    if (dot->parsed()) return cmd_dot(opt);
    if (analyze->parsed()) return cmd_analyze(opt);
    if (axioms->parsed()) return cmd_axioms(opt);
    if (identify->parsed()) return cmd_identify(opt);
    if (tm_run_cmd->parsed()) return cmd_tm_run(opt);
  } catch (const IdentificationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
