#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "seqdec/errors.hpp"

using namespace seqdec;
using namespace fixtures;

namespace {

bool same_decisions(const DecisionAutomaton& a, const DecisionAutomaton& b, std::size_t length) {
  const auto& X = a.alphabet();
  for (const auto& w : oracle::words(X->size(), length)) {
    for (Symbol c = 0; c < X->size(); ++c) {
      const Sequence s(X, w, {c});
      const auto ea = evaluate(a, s);
      const auto eb = evaluate(b, s);
      if (ea.decision != eb.decision || ea.stop_position != eb.stop_position) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("automaton round trip") {
  const auto aut = figure1();
  CHECK(aut.state_count() == 6);
  const Json doc = automaton_to_json(aut);
  const auto back = automaton_from_json(doc);
  CHECK(back.state_names() == aut.state_names());
  CHECK(same_decisions(aut, back, 3));
  CHECK(automaton_to_json(back) == doc);
}

TEST_CASE("automaton with its own decision labels") {
  const auto aut = automaton_from_json(Json::parse(R"({
    "alphabet": ["x", "y"], "decisions": ["accept", "reject"],
    "states": ["q0", "yes", "no"], "initial": "q0",
    "transitions": {"q0": {"x": "yes", "y": "no"}},
    "terminal": {"yes": "accept", "no": "reject"}})"));
  CHECK_FALSE(aut.is_choice_automaton());
  CHECK(evaluate(aut, parse_sequence(aut.alphabet(), "y|x")).decision == 1);
  CHECK(automaton_to_json(aut).contains("decisions"));
}

TEST_CASE("automaton loader errors") {
  auto load = [](const char* text) { return automaton_from_json(Json::parse(text)); };
  CHECK_THROWS_AS(load(R"({"alphabet": ["x"], "states": ["q"], "initial": "q", "transitions": {}, "terminal": {}})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load(R"({"alphabet": ["x"], "states": ["q", "t"], "initial": "p",
                           "transitions": {"q": {"x": "t"}}, "terminal": {"t": "x"}})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load(R"({"alphabet": ["x"], "states": ["q", "t"], "initial": "q",
                           "transitions": {"q": {"z": "t"}}, "terminal": {"t": "x"}})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load(R"({"alphabet": ["x"], "states": ["q", "t"], "initial": "q",
                           "transitions": {"q": {"x": "t"}}, "terminal": {"t": "w"}})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load(R"({"alphabet": ["x", "x"], "states": ["q", "t"], "initial": "q",
                           "transitions": {"q": {"x": "t"}}, "terminal": {"t": "x"}})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load(R"([1, 2])"), InvalidArgument);
}

TEST_CASE("rule spec round trips") {
  const auto corpus = make_corpus();
  for (const auto& spec : all_specs(corpus)) {
    const Json doc = rule_spec_to_json(spec);
    const RuleSpec back = rule_spec_from_json(doc);
    CHECK(rule_spec_to_json(back) == doc);
    const auto& X = spec_alphabet(spec);
    for (const auto& w : oracle::words(X->size(), 3)) {
      const Sequence s(X, w, {static_cast<Symbol>(w.size() % X->size())});
      CHECK(evaluate_spec(spec, s) == evaluate_spec(back, s));
    }
  }
}

TEST_CASE("rule spec fields") {
  const auto spec = rule_spec_from_json(Json::parse(
      R"({"kind": "csr", "alphabet": ["a", "b"], "weights": {"a": "2/3", "b": 1}, "threshold": "2"})"));
  const auto& c = std::get<CsrSpec>(spec);
  CHECK(c.weights == std::vector<Rational>{Rational(2, 3), Rational(1)});
  CHECK(c.threshold == Rational(2));

  const auto osr = std::get<OsrSpec>(rule_spec_from_json(Json::parse(
      R"({"kind": "osr", "alphabet": ["a", "b", "c"], "order": ["c", "a", "b"], "threshold_alt": "a", "span": 3})")));
  CHECK(osr.order == std::vector<Symbol>{2, 0, 1});
  CHECK(osr.threshold_alt == 0);

  const auto table = std::get<ConfigRuleSpec>(rule_spec_from_json(Json::parse(
      R"({"kind": "config", "alphabet": ["a", "b"], "window": 1, "comparator": {"table": {"0": 0, "1": 1}}})")));
  CHECK(table.rank_of(BitWord::parse("1")) == 1);
}

TEST_CASE("rule spec errors") {
  auto load = [](const char* text) { return rule_spec_from_json(Json::parse(text)); };
  CHECK_THROWS_AS(load(R"({"kind": "nope"})"), InvalidArgument);
  CHECK_THROWS_AS(load(R"({"kind": "csr", "alphabet": ["a"], "weights": {"a": "0"}, "threshold": "1"})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load(R"({"kind": "csr", "alphabet": ["a", "b"], "weights": {"a": "1"}, "threshold": "1"})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load(R"({"kind": "osr", "alphabet": ["a", "b"], "order": ["a"], "threshold_alt": "a", "span": 1})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load(R"({"kind": "config", "alphabet": ["a"], "window": 2,
                           "comparator": {"table": {"00": 0, "01": 1, "10": 1, "11": 2}}})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load(R"({"kind": "config", "alphabet": ["a"], "window": 1, "comparator": {"builtin": "random"}})"),
                  InvalidArgument);
}

TEST_CASE("machine round trip and rule") {
  const auto tm = automaton_to_tm(figure1());
  const Json doc = tm_to_json(tm);
  const auto back = tm_from_json(doc);
  CHECK(back.state_count() == tm.state_count());
  CHECK(tm_to_json(back) == doc);

  const Rule rule = tm_rule(back, 3, 20);
  const auto aut = figure1();
  for (const auto& w : oracle::words(2, 3)) {
    const Sequence s(aut.alphabet(), w, {1});
    CHECK(rule.decide(s) == evaluate(aut, s).decision);
  }
  CHECK(uniform_bound_search(rule) == 3);
  CHECK(std::holds_alternative<TwoTapeTm>(document_from_json(doc)));
}

TEST_CASE("machine loader errors") {
  auto load = [](const char* text) { return tm_from_json(Json::parse(text)); };
  CHECK_THROWS_AS(load(R"({"kind": "tm", "alphabet": ["a"], "states": ["q", "h"], "initial": "q", "terminal": ["h"],
                           "transitions": [{"state": "q", "read": ["*", "*"], "next": "h", "write": "*",
                                            "move": ["S", "X"]}]})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load(R"({"kind": "tm", "alphabet": ["a"], "states": ["q", "h"], "initial": "q", "terminal": ["h"],
                           "transitions": [{"state": "q", "read": ["a", "*"], "next": "h", "write": "*",
                                            "move": ["S", "S"]}]})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load(R"({"kind": "tm", "alphabet": ["a"], "states": ["q", "h"], "initial": "q", "terminal": ["h"],
                           "transitions": [{"state": "q", "read": ["*", "*"], "next": "h", "write": "zz",
                                            "move": ["S", "S"]}]})"),
                  InvalidArgument);
}

TEST_CASE("documents") {
  CHECK(std::holds_alternative<RuleSpec>(document_from_json(rule_spec_to_json(RuleSpec{csr(abc(), {1, 1, 1}, 3)}))));
  CHECK(std::holds_alternative<DecisionAutomaton>(document_from_json(automaton_to_json(figure1()))));
  CHECK_THROWS_AS(read_json_file("/nonexistent/rule.json"), InvalidArgument);
}

TEST_CASE("report json") {
  const auto rule = Rule::from_automaton(csr_compile(unequal_weights_spec()));
  const auto r = check_neutrality(rule);
  const Json doc = report_to_json(r, *rule.alphabet());
  CHECK(doc["axiom"] == "neutrality");
  CHECK(doc["verdict"] == "fail");
  CHECK(doc["horizon"] == r.horizon);
  CHECK(doc["checked"] == r.checked);
  const Json& w = doc["witness"];
  CHECK(w["sequence"].get<std::string>().find('|') != std::string::npos);
  CHECK(w["sigma"].size() == 2);

  const auto ok = check_monotonicity(rule);
  const Json pass = report_to_json(ok, *rule.alphabet());
  CHECK(pass["verdict"] == "pass");
  CHECK(pass["witness"].is_null());
}
