#include "seqdec/io.hpp"

#include <fstream>
#include <map>
#include <unordered_map>

#include "seqdec/errors.hpp"

namespace seqdec {

namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object()) throw InvalidArgument("expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw InvalidArgument(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_of(const Json& v, const char* what) {
  if (!v.is_string()) throw InvalidArgument(std::string(what) + " must be a string");
  return v.get<std::string>();
}

std::size_t count_of(const Json& v, const char* what) {
  if (!v.is_number_unsigned()) throw InvalidArgument(std::string(what) + " must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<std::string> strings_of(const Json& v, const char* what) {
  if (!v.is_array()) throw InvalidArgument(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(string_of(e, what));
  return out;
}

AlphabetPtr alphabet_of(const Json& doc, const char* key = "alphabet") {
  return make_alphabet(strings_of(field(doc, key), key));
}

Json names_json(const Alphabet& a) { return Json(a.names()); }

Rational rational_of(const Json& v, const char* what) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  return parse_rational(string_of(v, what));
}

}  // namespace

// ---------------------------------------------------------------------------
// Automata

DecisionAutomaton automaton_from_json(const Json& doc) {
  const AlphabetPtr X = alphabet_of(doc);
  const AlphabetPtr Y = doc.contains("decisions") ? alphabet_of(doc, "decisions") : X;
  const auto names = strings_of(field(doc, "states"), "states");
  std::unordered_map<std::string, StateId> id;
  for (StateId q = 0; q < names.size(); ++q) {
    if (!id.emplace(names[q], q).second) throw InvalidArgument("duplicate state '" + names[q] + "'");
  }
  auto state = [&](const std::string& name) {
    auto it = id.find(name);
    if (it == id.end()) throw InvalidArgument("unknown state '" + name + "'");
    return it->second;
  };

  const StateId initial = state(string_of(field(doc, "initial"), "initial"));
  std::vector<std::optional<Decision>> outputs(names.size());
  const Json& terminal = doc.contains("terminal") ? doc.at("terminal") : Json::object();
  if (!terminal.is_object()) throw InvalidArgument("'terminal' must map states to outputs");
  for (const auto& [q, y] : terminal.items()) outputs[state(q)] = Y->index(string_of(y, "terminal output"));

  constexpr StateId kUnset = ~StateId{0};
  std::vector<StateId> delta(names.size() * X->size(), kUnset);
  const Json& transitions = field(doc, "transitions");
  if (!transitions.is_object()) throw InvalidArgument("'transitions' must map states to symbol maps");
  for (const auto& [from, row] : transitions.items()) {
    const StateId q = state(from);
    if (!row.is_object()) throw InvalidArgument("transitions of '" + from + "' must be an object");
    for (const auto& [sym, to] : row.items()) {
      delta[q * X->size() + X->index(sym)] = state(string_of(to, "transition target"));
    }
  }
  for (StateId q = 0; q < names.size(); ++q) {
    for (Symbol s = 0; s < X->size(); ++s) {
      auto& cell = delta[q * X->size() + s];
      if (cell == kUnset) {
        if (!outputs[q]) throw InvalidArgument("state '" + names[q] + "' has no transition on '" + X->name(s) + "'");
        cell = q;
      }
    }
  }
  return DecisionAutomaton(X, Y, names, initial, std::move(delta), std::move(outputs));
}

Json automaton_to_json(const DecisionAutomaton& aut) {
  const auto& X = *aut.alphabet();
  const auto& Y = *aut.decisions();
  Json doc;
  doc["alphabet"] = names_json(X);
  if (!aut.is_choice_automaton()) doc["decisions"] = names_json(Y);
  doc["states"] = aut.state_names();
  doc["initial"] = aut.state_name(aut.initial());
  Json transitions = Json::object();
  Json terminal = Json::object();
  for (StateId q = 0; q < aut.state_count(); ++q) {
    if (aut.is_terminal(q)) {
      terminal[aut.state_name(q)] = Y.name(*aut.output(q));
      continue;
    }
    Json row = Json::object();
    for (Symbol s = 0; s < X.size(); ++s) row[X.name(s)] = aut.state_name(aut.next(q, s));
    transitions[aut.state_name(q)] = std::move(row);
  }
  doc["transitions"] = std::move(transitions);
  doc["terminal"] = std::move(terminal);
  return doc;
}

// ---------------------------------------------------------------------------
// Rule specifications

namespace {

CsrSpec csr_from_json(const Json& doc) {
  CsrSpec spec{alphabet_of(doc), {}, rational_of(field(doc, "threshold"), "threshold")};
  const Json& weights = field(doc, "weights");
  if (!weights.is_object()) throw InvalidArgument("'weights' must map alternatives to rationals");
  if (weights.size() != spec.alphabet->size()) throw InvalidArgument("'weights' must cover the alphabet exactly");
  spec.weights.assign(spec.alphabet->size(), Rational(0));
  for (const auto& [x, w] : weights.items()) spec.weights[spec.alphabet->index(x)] = rational_of(w, "weight");
  spec.validate();
  return spec;
}

OsrSpec osr_from_json(const Json& doc) {
  OsrSpec spec{alphabet_of(doc), {}, 0, count_of(field(doc, "span"), "span")};
  for (const auto& x : strings_of(field(doc, "order"), "order")) spec.order.push_back(spec.alphabet->index(x));
  spec.threshold_alt = spec.alphabet->index(string_of(field(doc, "threshold_alt"), "threshold_alt"));
  spec.validate();
  return spec;
}

ConfigRuleSpec config_from_json(const Json& doc) {
  const AlphabetPtr X = alphabet_of(doc);
  const std::size_t window = count_of(field(doc, "window"), "window");
  const Json& cmp = field(doc, "comparator");
  if (cmp.contains("builtin")) {
    const auto name = string_of(cmp.at("builtin"), "builtin comparator");
    if (name == "first-position-priority") return make_config_rule(X, window, ComparatorKind::FirstPositionPriority);
    if (name == "numeric-value") return make_config_rule(X, window, ComparatorKind::NumericValue);
    throw InvalidArgument("unknown builtin comparator '" + name + "'");
  }
  const Json& table = field(cmp, "table");
  if (!table.is_object()) throw InvalidArgument("comparator table must map bit words to ranks");
  std::map<BitWord, std::uint64_t> ranks;
  for (const auto& [word, rank] : table.items()) {
    if (!rank.is_number_unsigned()) throw InvalidArgument("comparator ranks must be non-negative integers");
    if (!ranks.emplace(BitWord::parse(word), rank.get<std::uint64_t>()).second) {
      throw InvalidArgument("duplicate comparator word '" + word + "'");
    }
  }
  return make_config_rule(X, window, ranks);
}

}  // namespace

RuleSpec rule_spec_from_json(const Json& doc) {
  const auto kind = string_of(field(doc, "kind"), "kind");
  if (kind == "csr") return csr_from_json(doc);
  if (kind == "osr") return osr_from_json(doc);
  if (kind == "config") return config_from_json(doc);
  throw InvalidArgument("unknown rule kind '" + kind + "'");
}

Json rule_spec_to_json(const RuleSpec& spec) {
  Json doc;
  if (const auto* csr = std::get_if<CsrSpec>(&spec)) {
    doc["kind"] = "csr";
    doc["alphabet"] = names_json(*csr->alphabet);
    Json weights = Json::object();
    for (Symbol x = 0; x < csr->alphabet->size(); ++x) weights[csr->alphabet->name(x)] = format_rational(csr->weights[x]);
    doc["weights"] = std::move(weights);
    doc["threshold"] = format_rational(csr->threshold);
  } else if (const auto* osr = std::get_if<OsrSpec>(&spec)) {
    doc["kind"] = "osr";
    doc["alphabet"] = names_json(*osr->alphabet);
    Json order = Json::array();
    for (Symbol x : osr->order) order.push_back(osr->alphabet->name(x));
    doc["order"] = std::move(order);
    doc["threshold_alt"] = osr->alphabet->name(osr->threshold_alt);
    doc["span"] = osr->span;
  } else {
    const auto& cfg = std::get<ConfigRuleSpec>(spec);
    doc["kind"] = "config";
    doc["alphabet"] = names_json(*cfg.alphabet);
    doc["window"] = cfg.window;
    switch (cfg.kind) {
      case ComparatorKind::FirstPositionPriority:
        doc["comparator"] = {{"builtin", "first-position-priority"}};
        break;
      case ComparatorKind::NumericValue:
        doc["comparator"] = {{"builtin", "numeric-value"}};
        break;
      case ComparatorKind::Table: {
        Json table = Json::object();
        for (std::uint32_t bits = 0; bits < cfg.rank.size(); ++bits) {
          table[BitWord(cfg.window, bits).to_string()] = cfg.rank[bits];
        }
        doc["comparator"] = {{"table", std::move(table)}};
        break;
      }
    }
  }
  return doc;
}

const AlphabetPtr& spec_alphabet(const RuleSpec& spec) {
  return std::visit([](const auto& s) -> const AlphabetPtr& { return s.alphabet; }, spec);
}

DecisionAutomaton compile_spec(const RuleSpec& spec) {
  if (const auto* csr = std::get_if<CsrSpec>(&spec)) return csr_compile(*csr);
  if (const auto* osr = std::get_if<OsrSpec>(&spec)) return osr_compile(*osr);
  return config_compile(std::get<ConfigRuleSpec>(spec));
}

Symbol evaluate_spec(const RuleSpec& spec, const Sequence& seq) {
  if (const auto* csr = std::get_if<CsrSpec>(&spec)) return csr_evaluate(*csr, seq).choice;
  if (const auto* osr = std::get_if<OsrSpec>(&spec)) return osr_evaluate(*osr, seq);
  return config_evaluate(std::get<ConfigRuleSpec>(spec), seq);
}

// ---------------------------------------------------------------------------
// Machines

namespace {

Move move_of(const Json& v) {
  const auto m = string_of(v, "move");
  if (m == "L") return Move::Left;
  if (m == "S") return Move::Stay;
  if (m == "R") return Move::Right;
  throw InvalidArgument("move must be L, S or R, not '" + m + "'");
}

const char* move_name(Move m) {
  switch (m) {
    case Move::Left: return "L";
    case Move::Stay: return "S";
    case Move::Right: return "R";
  }
  return "S";
}

}  // namespace

TwoTapeTm tm_from_json(const Json& doc) {
  const AlphabetPtr X = alphabet_of(doc);
  std::vector<std::string> tape{kStartSymbol, kBlankSymbol};
  for (const auto& name : X->names()) tape.push_back(name);
  if (doc.contains("symbols")) {
    for (const auto& name : strings_of(doc.at("symbols"), "symbols")) {
      if (std::find(tape.begin(), tape.end(), name) == tape.end()) tape.push_back(name);
    }
  }
  auto symbol = [&](const std::string& name) {
    auto it = std::find(tape.begin(), tape.end(), name);
    if (it == tape.end()) throw InvalidArgument("unknown tape symbol '" + name + "'");
    return static_cast<TapeSymbol>(it - tape.begin());
  };

  const auto states = strings_of(field(doc, "states"), "states");
  auto state = [&](const std::string& name) {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) throw InvalidArgument("unknown machine state '" + name + "'");
    return static_cast<StateId>(it - states.begin());
  };
  const StateId initial = state(string_of(field(doc, "initial"), "initial"));
  std::vector<bool> terminal(states.size(), false);
  for (const auto& q : strings_of(field(doc, "terminal"), "terminal")) terminal[state(q)] = true;

  const std::size_t t = tape.size();
  std::vector<std::optional<TmAction>> delta(states.size() * t * t);
  const Json& rules = field(doc, "transitions");
  if (!rules.is_array()) throw InvalidArgument("'transitions' must be an array");
  for (const auto& r : rules) {
    const StateId q = state(string_of(field(r, "state"), "state"));
    const auto read = strings_of(field(r, "read"), "read");
    const Json& moves = field(r, "move");
    if (read.size() != 2 || !moves.is_array() || moves.size() != 2) {
      throw InvalidArgument("'read' and 'move' must list the input tape then the output tape");
    }
    const StateId next = state(string_of(field(r, "next"), "next"));
    const auto write = string_of(field(r, "write"), "write");
    const Move in_move = move_of(moves[0]);
    const Move out_move = move_of(moves[1]);
    for (TapeSymbol in = 0; in < t; ++in) {
      if (read[0] != "*" && symbol(read[0]) != in) continue;
      for (TapeSymbol out = 0; out < t; ++out) {
        if (read[1] != "*" && symbol(read[1]) != out) continue;
        auto& cell = delta[(q * t + in) * t + out];
        if (cell) continue;  // earlier entries take precedence
        cell = TmAction{next, write == "*" ? out : symbol(write), in_move, out_move};
      }
    }
  }
  return TwoTapeTm(X, std::move(tape), states, initial, std::move(terminal), std::move(delta));
}

Json tm_to_json(const TwoTapeTm& tm) {
  const auto& X = *tm.input_alphabet();
  const auto& tape = tm.tape_symbols();
  Json doc;
  doc["kind"] = "tm";
  doc["alphabet"] = names_json(X);
  Json extra = Json::array();
  for (const auto& s : tape) {
    if (s != kStartSymbol && s != kBlankSymbol && !X.contains(s)) extra.push_back(s);
  }
  if (!extra.empty()) doc["symbols"] = std::move(extra);
  doc["states"] = tm.state_names();
  doc["initial"] = tm.state_name(tm.initial());
  Json terminal = Json::array();
  Json rules = Json::array();
  for (StateId q = 0; q < tm.state_count(); ++q) {
    if (tm.is_terminal(q)) {
      terminal.push_back(tm.state_name(q));
      continue;
    }
    for (TapeSymbol in = 0; in < tape.size(); ++in) {
      for (TapeSymbol out = 0; out < tape.size(); ++out) {
        const TmAction& a = *tm.action(q, in, out);
        rules.push_back({{"state", tm.state_name(q)},
                         {"read", {tape[in], tape[out]}},
                         {"next", tm.state_name(a.next)},
                         {"write", tape[a.write]},
                         {"move", {move_name(a.input_move), move_name(a.output_move)}}});
      }
    }
  }
  doc["terminal"] = std::move(terminal);
  doc["transitions"] = std::move(rules);
  return doc;
}

Rule tm_rule(const TwoTapeTm& tm, std::size_t horizon, std::size_t budget) {
  const AlphabetPtr X = tm.input_alphabet();
  auto evaluator = [tm, X, budget](const Sequence& seq) -> Decision {
    const TmRun r = tm_run(tm, seq, budget);
    const std::string& name = tm.tape_symbols()[*r.decision];
    if (!X->contains(name)) throw InvalidArgument("machine halted with '" + name + "' under the output head");
    return X->index(name);
  };
  return Rule::black_box(X, X, std::move(evaluator), horizon);
}

// ---------------------------------------------------------------------------
// Documents

Document document_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidArgument("expected a JSON object");
  if (!doc.contains("kind") || doc.at("kind") == "automaton") return automaton_from_json(doc);
  if (doc.at("kind") == "tm") return tm_from_json(doc);
  return rule_spec_from_json(doc);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("'" + path.string() + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

namespace {

struct WitnessJson {
  const Alphabet& X;

  std::string seq(const Sequence& s) const { return format_sequence(s); }
  std::string seg(const Segment& s) const { return format_segment(s); }
  const std::string& sym(Symbol s) const { return X.name(s); }

  Json operator()(const MonotonicityWitness& w) const {
    return {{"kind", w.kind == MonotonicityWitness::Kind::Shift ? "shift" : "deletion"},
            {"sequence", seq(w.original)},
            {"position", w.position},
            {"transformed", seq(w.transformed)},
            {"expected", sym(w.expected)},
            {"observed", sym(w.observed)}};
  }
  Json operator()(const DominanceWitness& w) const {
    return {{"minimal", seg(w.minimal)},
            {"sufficient", seg(w.sufficient)},
            {"truncation", w.truncation},
            {"combined", seq(w.combined)},
            {"excluded", sym(w.excluded)}};
  }
  Json operator()(const ReplacementWitness& w) const {
    return {{"minimal", seg(w.minimal)},
            {"position", w.position},
            {"replacement", sym(w.replacement)},
            {"replaced", seg(w.replaced)}};
  }
  Json operator()(const AlphaWitness& w) const {
    return {{"smaller", seg(w.smaller)},
            {"smaller_decision", sym(w.smaller_decision)},
            {"larger", seg(w.larger)},
            {"larger_decision", sym(w.larger_decision)}};
  }
  Json operator()(const NbcWitness& w) const {
    return {{"x", sym(w.x)}, {"y", sym(w.y)}, {"z", sym(w.z)},
            {"xy", seg(w.xy)}, {"yz", seg(w.yz)}, {"xz", seg(w.xz)}};
  }
  Json operator()(const NeutralityWitness& w) const {
    Json sigma = Json::object();
    for (Symbol s = 0; s < w.sigma.size(); ++s) sigma[sym(s)] = sym(w.sigma(s));
    return {{"sequence", seq(w.original)},
            {"decision", sym(w.original_decision)},
            {"sigma", std::move(sigma)},
            {"relabeled", seq(w.relabeled)},
            {"relabeled_decision", sym(w.relabeled_decision)}};
  }
  Json operator()(const AcyclicityWitness& w) const {
    Json cycle = Json::array();
    for (const auto& e : w.cycle) {
      cycle.push_back({{"winner", e.winner.to_string()},
                       {"loser", e.loser.to_string()},
                       {"sequence", seq(e.witness)},
                       {"chosen", sym(e.chosen)},
                       {"other", sym(e.other)}});
    }
    return {{"cycle", std::move(cycle)}};
  }
};

}  // namespace

Json report_to_json(const AxiomReport& report, const Alphabet& alphabet) {
  Json doc;
  doc["axiom"] = std::string(axiom_name(report.axiom));
  doc["verdict"] = report.passed() ? "pass" : "fail";
  doc["witness"] = report.failure ? std::visit(WitnessJson{alphabet}, *report.failure) : Json(nullptr);
  doc["checked"] = report.checked;
  doc["horizon"] = report.horizon;
  return doc;
}

}  // namespace seqdec
