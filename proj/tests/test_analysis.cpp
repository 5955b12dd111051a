#include <doctest.h>

#include <cstdlib>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "seqdec/errors.hpp"

using namespace seqdec;
using namespace fixtures;

namespace {

AlphabetPtr xy() {
  static const AlphabetPtr X = make_alphabet({"x", "y"});
  return X;
}

Rule figure1_rule() { return Rule::from_automaton(csr_compile(csr(xy(), {1, 1}, 2))); }
Rule csr3() { return Rule::from_automaton(csr_compile(csr(abc(), {1, 1, 1}, 3))); }
Rule first_position(const AlphabetPtr& X) {
  return prefix_rule(X, 1, [](const Word& w) { return w[0]; });
}
Rule osr_rule(OsrSpec s) { return Rule::from_automaton(osr_compile(s)); }

Rule black(const RuleSpec& spec, std::size_t horizon) {
  const auto& X = spec_alphabet(spec);
  return Rule::black_box(X, X, [spec](const Sequence& s) { return evaluate_spec(spec, s); }, horizon);
}

bool agree_on_family(const Rule& a, const Rule& b, std::size_t length) {
  const auto& X = a.alphabet();
  for (std::size_t i = 0; i < witness_family_size(*X, length); ++i) {
    const Sequence s = witness_family_member(X, length, i);
    if (a.decide(s) != b.decide(s)) return false;
  }
  return true;
}

std::string dump(const AxiomReport& r, const Rule& rule) { return report_to_json(r, *rule.alphabet()).dump(); }

}  // namespace

TEST_CASE("stopping_time") {
  CHECK(stopping_time(csr3(), parse_sequence(abc(), "|a b c")) == 7);
  CHECK(stopping_time(first_position(abc()), parse_sequence(abc(), "b|a")) == 1);
  CHECK(stopping_time(figure1_rule(), Sequence::constant(xy(), 0)) == 2);

  const auto fig = figure1_rule();
  const auto table = oracle::Outcomes([&](const Sequence& s) { return fig.decide(s); }, xy(), 3);
  for (const auto& w : oracle::words(2, 3)) {
    for (Symbol c = 0; c < 2; ++c) {
      const Sequence s(xy(), w, {c});
      CHECK(stopping_time(fig, s) == oracle::stopping_time(table, s));
    }
  }
}

TEST_CASE("uniform_bound_search") {
  CHECK(uniform_bound_search(figure1_rule()) == 3);
  CHECK(uniform_bound_search(csr3()) == 7);
  CHECK(uniform_bound_search(osr_rule(OsrSpec{abc(), {0, 1, 2}, 0, 3})) == 3);
  CHECK(uniform_bound_search(first_position(abc())) == 1);

  // black-box rules are searched without an automaton
  const auto spec = csr(abc(), {1, 2, 1}, 2);
  CHECK(uniform_bound_search(black(spec, csr_uniform_bound(spec))) == csr_uniform_bound(spec));
}

TEST_CASE("enumerate_minimal_sufficient") {
  const auto fig = enumerate_minimal_sufficient(figure1_rule());
  auto has = [&](const char* seg, Decision y) {
    for (const auto& m : fig) {
      if (format_segment(m.segment) == seg) return m.decision == y;
    }
    return false;
  };
  CHECK(has("x x", 0));
  CHECK(has("x y x", 0));
  CHECK_FALSE(has("x", 0));
  CHECK_FALSE(has("x", 1));
  CHECK_FALSE(has("x y", 0));
  CHECK_FALSE(has("x y", 1));
  CHECK(fig.size() == 6);

  const auto first = enumerate_minimal_sufficient(first_position(abc()));
  REQUIRE(first.size() == 3);
  for (Symbol x = 0; x < 3; ++x) {
    CHECK(first[x].segment.word() == Word{x});
    CHECK(first[x].decision == x);
  }

  bool found = false;
  for (const auto& m : enumerate_minimal_sufficient(csr3())) {
    found = found || (format_segment(m.segment) == "a b c a b c a" && m.decision == 0);
  }
  CHECK(found);
}

TEST_CASE("witness family") {
  CHECK(witness_family_size(*abc(), 2) == 27);
  const auto s = witness_family_member(abc(), 2, 5);
  CHECK(s.prefix() == Word{0, 1});
  CHECK(s.cycle() == Word{2});
}

TEST_CASE("decisive_set") {
  const auto osr = decisive_set(osr_rule(OsrSpec{abc(), {0, 1, 2}, 1, 2}));
  CHECK(osr.decisive == singleton(0));
  CHECK(osr.non_decisive == (singleton(1) | singleton(2)));
  for (const auto& [x, m] : osr.witnesses) {
    CHECK(contains(m.segment.symbols(), x));
    CHECK(m.decision != x);
  }

  CHECK(decisive_set(osr_rule(OsrSpec{abc(), {0, 1, 2}, 2, 1})).decisive == abc()->all());

  const auto fig = decisive_set(figure1_rule());
  CHECK(fig.decisive == 0);
  CHECK(fig.non_decisive == xy()->all());
}

TEST_CASE("monotonicity") {
  CHECK(check_monotonicity(csr3()).passed());
  CHECK(check_monotonicity(first_position(make_alphabet({"a", "b"}))).passed());

  const auto rule = second_position();
  const auto r = check_monotonicity(rule);
  REQUIRE_FALSE(r.passed());
  CHECK(replay(rule, r));
  const auto& w = std::get<MonotonicityWitness>(*r.failure);
  CHECK(w.expected == rule.decide(w.original));
  CHECK(w.observed == rule.decide(w.transformed));
  CHECK(w.expected != w.observed);
}

TEST_CASE("informational dominance") {
  CHECK(check_informational_dominance(csr3()).passed());

  // the combined segment of a minimal a-segment with a b-sufficient one
  const auto spec = csr(abc(), {1, 1, 1}, 3);
  const auto combined = concat(parse_segment(abc(), "a b c a b c b b c b b"), Sequence::constant(abc(), 2));
  CHECK(csr_evaluate(spec, combined).choice == 1);

  const auto rule = best_of_three();
  const auto r = check_informational_dominance(rule);
  REQUIRE_FALSE(r.passed());
  CHECK(replay(rule, r));
  const auto& w = std::get<DominanceWitness>(*r.failure);
  CHECK(rule.decide(w.combined) == w.excluded);
  CHECK_FALSE(contains(w.sufficient.symbols(), w.excluded));
}

TEST_CASE("replacement") {
  CHECK(check_replacement(osr_rule(OsrSpec{abc(), {0, 1, 2}, 1, 2})).passed());
  CHECK(check_replacement(first_position(abc())).passed());
  // (x x) decides x but (x y) is not sufficient
  CHECK_FALSE(check_replacement(figure1_rule()).passed());

  const auto rule = Rule::from_automaton(csr_compile(replacement_mutant_spec()));
  CHECK(rule.settled(parse_segment(abc(), "b b b").word()) == Decision{1});
  CHECK_FALSE(rule.settled(parse_segment(abc(), "b b").word()));
  CHECK_FALSE(rule.settled(parse_segment(abc(), "b b c").word()));
  const auto r = check_replacement(rule);
  REQUIRE_FALSE(r.passed());
  CHECK(replay(rule, r));
  const auto& w = std::get<ReplacementWitness>(*r.failure);
  CHECK_FALSE(rule.settled(w.replaced.word()));
}

TEST_CASE("sequential alpha") {
  CHECK(check_sequential_alpha(osr_rule(OsrSpec{abc(), {2, 0, 1}, 0, 3})).passed());
  CHECK(check_sequential_alpha(first_position(abc())).passed());

  const auto rule = alpha_mutant();
  const auto r = check_sequential_alpha(rule);
  REQUIRE_FALSE(r.passed());
  CHECK(replay(rule, r));
  const auto& w = std::get<AlphaWitness>(*r.failure);
  CHECK(is_subset(w.smaller.symbols(), w.larger.symbols()));
  CHECK(contains(w.larger.symbols(), w.smaller_decision));
  CHECK(w.smaller_decision != w.larger_decision);
}

TEST_CASE("sequential NBC") {
  CHECK(check_snbc(osr_rule(OsrSpec{abc(), {1, 2, 0}, 2, 2})).passed());
  CHECK(check_snbc(first_position(abc())).passed());
  CHECK(check_snbc(figure1_rule()).passed());

  const auto rule = tournament();
  const auto r = check_snbc(rule);
  REQUIRE_FALSE(r.passed());
  CHECK(replay(rule, r));
  const auto& w = std::get<NbcWitness>(*r.failure);
  CHECK(rule.settled(w.xy.word()) == w.x);
  CHECK(rule.settled(w.yz.word()) == w.y);
  CHECK(rule.settled(w.xz.word()) == w.z);
}

TEST_CASE("neutrality") {
  CHECK(check_neutrality(Rule::from_automaton(config_compile(make_config_rule(abc(), 3, ComparatorKind::NumericValue))))
            .passed());
  CHECK(check_neutrality(csr3()).passed());
  CHECK(check_neutrality(first_position(make_alphabet({"a"}))).passed());

  const auto spec = unequal_weights_spec();
  const auto X = spec.alphabet;
  const auto S = parse_sequence(X, "b|a");
  CHECK(csr_evaluate(spec, S).choice == 0);
  const auto swapped = relabel(S, Relabeling::swap(2, 0, 1));
  CHECK(swapped == parse_sequence(X, "a|b"));
  CHECK(csr_evaluate(spec, swapped).choice == 0);

  const auto rule = Rule::from_automaton(csr_compile(spec));
  const auto r = check_neutrality(rule);
  REQUIRE_FALSE(r.passed());
  CHECK(replay(rule, r));
  const auto& w = std::get<NeutralityWitness>(*r.failure);
  CHECK(w.relabeled_decision != w.sigma(w.original_decision));
}

TEST_CASE("acyclicity") {
  const auto X = make_alphabet({"a", "b"});
  const auto spec = make_config_rule(X, 3, ComparatorKind::FirstPositionPriority);
  const auto fpp = Rule::from_automaton(config_compile(spec));
  CHECK(check_acyclicity(fpp).passed());
  for (const auto& [pair, edge] : revealed_configuration_relation(fpp)) {
    CHECK(spec.rank_of(pair.first) > spec.rank_of(pair.second));
    CHECK(fpp.decide(edge.witness) == edge.chosen);
  }
  const auto order = revealed_configuration_order(fpp);
  REQUIRE(order);
  for (std::size_t i = 1; i < order->size(); ++i) {
    const auto rel = revealed_configuration_relation(fpp);
    CHECK_FALSE(rel.count({(*order)[i], (*order)[i - 1]}));
  }

  const auto rule = rotating_configurations();
  const auto r = check_acyclicity(rule);
  REQUIRE_FALSE(r.passed());
  CHECK(replay(rule, r));
  const auto& cycle = std::get<AcyclicityWitness>(*r.failure).cycle;
  REQUIRE(cycle.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(cycle[i].loser == cycle[(i + 1) % 3].winner);
    CHECK(rule.decide(cycle[i].witness) == cycle[i].chosen);
  }
  CHECK_FALSE(revealed_configuration_order(rule));
}

TEST_CASE("suites") {
  const auto reports = run_suite(csr3(), Suite::Csr);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].axiom == Axiom::Monotonicity);
  CHECK(reports[1].axiom == Axiom::InformationalDominance);
  CHECK(run_suite(csr3(), Suite::Osr).size() == 3);
  CHECK(run_suite(csr3(), Suite::Config).size() == 2);
  CHECK(run_suite(csr3(), Suite::All).size() == 7);
  for (const auto& r : run_suite(csr3(), Suite::Csr)) {
    CHECK(r.horizon == 7);
    CHECK(r.checked > 0);
    CHECK_FALSE(replay(csr3(), r));
  }
}

TEST_CASE("identify_csr") {
  const auto fig = black(csr(xy(), {1, 1}, 2), 3);
  const auto id = identify_csr(fig);
  CHECK(id.spec.threshold == Rational(1));
  CHECK(id.spec.weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  const auto X = make_alphabet({"a", "b"});
  const auto mixed = identify_csr(black(csr(X, {1, 2}, 3), 4));
  CHECK(mixed.spec.weights == std::vector<Rational>{Rational(1, 3), Rational(1, 2)});
  CHECK(agree_on_family(Rule::from_automaton(csr_compile(mixed.spec)), black(csr(X, {1, 2}, 3), 4), 4));

  const auto first = identify_csr(first_position(abc()));
  CHECK(first.spec.weights == std::vector<Rational>(3, Rational(1)));

  CHECK_THROWS_AS(identify_csr(second_position()), NotCsr);
}

TEST_CASE("identify_osr") {
  const OsrSpec spec{abc(), {0, 1, 2}, 1, 2};
  const auto id = identify_osr(black(spec, 2));
  CHECK(id.spec.span == 2);
  CHECK(agree_on_family(osr_rule(id.spec), osr_rule(spec), 2));

  const OsrSpec maximizer{abc(), {1, 2, 0}, 1, 3};
  const auto max_id = identify_osr(osr_rule(maximizer));
  CHECK(max_id.spec.order.front() == 1);
  CHECK(max_id.spec.threshold_alt == 2);
  CHECK(agree_on_family(osr_rule(max_id.spec), osr_rule(maximizer), 3));

  const auto k1 = identify_osr(first_position(abc()));
  CHECK(k1.spec.span == 1);
  CHECK(k1.spec.order == std::vector<Symbol>{0, 1, 2});

  CHECK_THROWS_AS(identify_osr(csr3()), NotOsr);
}

TEST_CASE("errors") {
  const auto early = Rule::black_box(abc(), abc(), [](const Sequence& s) { return s.at(3); }, 2);
  CHECK_THROWS_AS(uniform_bound_search(early), HorizonViolation);
  CHECK_THROWS_AS(check_monotonicity(early), HorizonViolation);

  const auto yn = make_alphabet({"yes", "no"});
  const auto labels = Rule::from_automaton(from_prefix_function(abc(), yn, 1, [](const Word& w) { return w[0] == 0 ? 0u : 1u; }));
  CHECK(uniform_bound_search(labels) == 1);
  CHECK_THROWS_AS(check_monotonicity(labels), NotAChoiceRule);
  CHECK_THROWS_AS(decisive_set(labels), NotAChoiceRule);
  CHECK_THROWS_AS(identify_csr(labels), NotAChoiceRule);

  const DecisionAutomaton loop(xy(), xy(), {"q0", "t"}, 0, {0, 0, 1, 1}, {std::nullopt, 0});
  CHECK_THROWS_AS(Rule::from_automaton(loop), Diverges);
}

TEST_CASE("thread count does not change the first witness") {
  auto run = [](const char* threads) {
    setenv("SEQDEC_THREADS", threads, 1);
    std::vector<std::string> out;
    const auto mono = second_position();
    out.push_back(dump(check_monotonicity(mono), mono));
    const auto cyc = rotating_configurations();
    out.push_back(dump(check_acyclicity(cyc), cyc));
    const auto neu = Rule::from_automaton(csr_compile(unequal_weights_spec()));
    out.push_back(dump(check_neutrality(neu), neu));
    return out;
  };
  const auto serial = run("1");
  const auto parallel = run("8");
  unsetenv("SEQDEC_THREADS");
  CHECK(serial == parallel);
}
