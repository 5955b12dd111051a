#pragma once

// JSON documents: automata, rule specifications, two-tape machines and axiom
// reports. Loaders validate everything and throw InvalidArgument.

#include <cstddef>
#include <filesystem>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "seqdec/analysis.hpp"
#include "seqdec/automaton.hpp"
#include "seqdec/heuristics.hpp"
#include "seqdec/machines.hpp"

namespace seqdec {

using Json = nlohmann::ordered_json;

using RuleSpec = std::variant<CsrSpec, OsrSpec, ConfigRuleSpec>;

/// Automaton format:
///   {"alphabet": [...], "decisions": [...]?, "states": [...], "initial": q,
///    "transitions": {q: {symbol: q'}}, "terminal": {q: output}}
/// "decisions" defaults to the alphabet. Terminal states may omit their
/// transitions; they are absorbing regardless.
DecisionAutomaton automaton_from_json(const Json& doc);
Json automaton_to_json(const DecisionAutomaton& aut);

/// {"kind": "csr" | "osr" | "config", ...}
RuleSpec rule_spec_from_json(const Json& doc);
Json rule_spec_to_json(const RuleSpec& spec);

const AlphabetPtr& spec_alphabet(const RuleSpec& spec);
DecisionAutomaton compile_spec(const RuleSpec& spec);
Symbol evaluate_spec(const RuleSpec& spec, const Sequence& seq);

/// Machine format:
///   {"kind": "tm", "alphabet": [...], "symbols": [...]?, "states": [...],
///    "initial": q, "terminal": [...],
///    "transitions": [{"state": q, "read": [in, out], "next": q',
///                     "write": sym, "move": [in_move, out_move]}]}
/// "read" entries and "write" accept "*": a wildcard read matches anything
/// not matched by an earlier entry, a wildcard write keeps the output cell.
/// Moves are "L", "S" or "R". The tape alphabet is the start and blank
/// symbols, the input alphabet and "symbols".
TwoTapeTm tm_from_json(const Json& doc);
Json tm_to_json(const TwoTapeTm& tm);

/// Black-box choice rule backed by a machine. Each decision runs the
/// machine within `budget` steps; the symbol left under the output head must
/// name an alternative.
Rule tm_rule(const TwoTapeTm& tm, std::size_t horizon, std::size_t budget);

using Document = std::variant<RuleSpec, DecisionAutomaton, TwoTapeTm>;

/// Dispatches on "kind"; a document without one is an automaton.
Document document_from_json(const Json& doc);
Json read_json_file(const std::filesystem::path& path);

/// {"axiom", "verdict", "witness", "checked", "horizon"}; sequences and
/// segments use prefix|cycle notation.
Json report_to_json(const AxiomReport& report, const Alphabet& alphabet);

}  // namespace seqdec
