#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "seqdec/errors.hpp"

using namespace seqdec;
using fixtures::abc;

namespace {

AlphabetPtr xy() { return make_alphabet({"x", "y"}); }

StateId state(const DecisionAutomaton& aut, const char* name) { return *aut.find_state(name); }

/// q0 loops on x; y leads to the terminal.
DecisionAutomaton loop_on_x() {
  return DecisionAutomaton(xy(), xy(), {"q0", "done"}, 0, {0, 1, 1, 1}, {std::nullopt, 0});
}

/// q0 -> p -> q0 on every symbol, terminal unreachable.
DecisionAutomaton two_cycle() {
  return DecisionAutomaton(xy(), xy(), {"q0", "p", "done"}, 0, {1, 1, 0, 0, 2, 2}, {std::nullopt, std::nullopt, 0});
}

}  // namespace

TEST_CASE("construction validates") {
  const auto X = xy();
  CHECK_THROWS_AS(DecisionAutomaton(X, X, {"q0"}, 0, {0}, {std::nullopt}), InvalidArgument);
  CHECK_THROWS_AS(DecisionAutomaton(X, X, {"q0", "t"}, 0, {1, 1, 0, 1}, {std::nullopt, 0}), InvalidArgument);
  CHECK_THROWS_AS(DecisionAutomaton(X, X, {"q0", "q0"}, 0, {1, 1, 1, 1}, {std::nullopt, 0}), InvalidArgument);
  CHECK_THROWS_AS(DecisionAutomaton(X, X, {"t"}, 0, {0, 0}, {0}), InvalidArgument);
  CHECK_THROWS_AS(DecisionAutomaton(X, X, {"q0", "t"}, 0, {1, 1, 1, 1}, {std::nullopt, 5}), InvalidArgument);
  CHECK_THROWS_AS(DecisionAutomaton(X, X, {"q0", "t"}, 0, {1, 7, 1, 1}, {std::nullopt, 0}), InvalidArgument);
}

TEST_CASE("run") {
  const auto aut = fixtures::figure1();
  const auto X = aut.alphabet();
  CHECK(aut.state_name(run(aut, parse_segment(X, "x x"))) == "2_x");
  CHECK(run(aut, Segment(X)) == aut.initial());
  CHECK(aut.state_name(run(aut, parse_segment(X, "x y x"))) == "2_x");
}

TEST_CASE("evaluate") {
  const auto aut = fixtures::figure1();
  const auto X = aut.alphabet();
  const auto e = evaluate(aut, Sequence::constant(X, 0));
  CHECK(e.decision == 0);
  CHECK(e.stop_position == 2);
  const auto f = evaluate(aut, parse_sequence(X, "|x y"));
  CHECK(f.decision == 0);
  CHECK(f.stop_position == 3);
  CHECK_THROWS_AS(evaluate(two_cycle(), parse_sequence(X, "|x y")), Diverges);
  CHECK_THROWS_AS(evaluate(loop_on_x(), Sequence::constant(X, 0)), Diverges);
  CHECK(evaluate(loop_on_x(), parse_sequence(X, "x x x|y")).stop_position == 4);
}

TEST_CASE("decidedness") {
  const auto aut = fixtures::figure1();
  const Decidedness d(aut);
  CHECK(d.decided(state(aut, "2_x")) == Decision{0});
  CHECK(d.decided(state(aut, "2_y")) == Decision{1});
  CHECK_FALSE(d.decided(state(aut, "1_x1_y")));
  CHECK(d.reachable_outputs(state(aut, "1_x1_y")) == 0b11);

  // terminals t1, t2 both output x; q0 -> {p, t1}, p -> {t1, t2}
  const auto X = xy();
  const DecisionAutomaton same(X, X, {"q0", "p", "t1", "t2"}, 0, {1, 2, 2, 3, 2, 2, 3, 3},
                               {std::nullopt, std::nullopt, 0, 0});
  const Decidedness ds(same);
  for (StateId q = 0; q < 4; ++q) CHECK(ds.decided(q) == Decision{0});

  // all terminals output x, but q0 may loop forever
  const Decidedness dl(loop_on_x());
  CHECK(dl.may_diverge(0));
  CHECK_FALSE(dl.decided(0));
}

TEST_CASE("sufficiency on the cycle sequence") {
  const auto aut = csr_compile(fixtures::csr(abc(), {1, 1, 1}, 3));
  const auto s = parse_sequence(abc(), "|a b c");
  CHECK(sufficiency(aut, prefix_of(s, 7)) == Sufficiency{SufficiencyKind::MinimalSufficient, 0});
  CHECK(sufficiency(aut, prefix_of(s, 6)) == Sufficiency{SufficiencyKind::NotSufficient, std::nullopt});
  CHECK(sufficiency(aut, prefix_of(s, 8)) == Sufficiency{SufficiencyKind::Sufficient, 0});
  CHECK(sufficiency(aut, prefix_of(s, 8)).sufficient());
}

TEST_CASE("verify_stopping") {
  const auto fig = std::get<UniformBound>(verify_stopping(fixtures::figure1()));
  CHECK(fig.bound == 3);
  const auto brute =
      oracle::max_stopping_time([](const Sequence& s) { return evaluate(fixtures::figure1(), s).decision; }, xy(), 3);
  CHECK(brute == 3);

  const auto X = xy();
  const DecisionAutomaton one(X, X, {"q0", "t"}, 0, {1, 1, 1, 1}, {std::nullopt, 1});
  CHECK(std::get<UniformBound>(verify_stopping(one)).bound == 1);

  const auto ns = std::get<NonStopping>(verify_stopping(two_cycle()));
  CHECK(ns.cycle.size() == 2);
  const auto aut = two_cycle();
  StateId q = run(aut, ns.reaching, aut.initial());
  CHECK(q == ns.cycle.front());
  CHECK(run(aut, ns.loop, q) == q);
  CHECK_THROWS_AS(require_uniform_bound(two_cycle()), Diverges);

  const auto loop = std::get<NonStopping>(verify_stopping(loop_on_x()));
  CHECK(loop.cycle.size() == 1);
}

TEST_CASE("minimize") {
  const auto fig = minimize(fixtures::figure1());
  CHECK(fig.state_count() == 6);
  for (const char* name : {"q0", "1_x", "1_y", "1_x1_y", "2_x", "2_y"}) CHECK(fig.find_state(name));

  // duplicate terminals of equal output collapse
  const auto X = xy();
  const DecisionAutomaton dup(X, X, {"q0", "t1", "t2"}, 0, {1, 2, 1, 1, 2, 2}, {std::nullopt, 0, 0});
  const auto m = minimize(dup);
  CHECK(m.state_count() == 2);
  CHECK(evaluate(m, parse_sequence(X, "|y")).decision == 0);

  const auto naive = csr_compile(fixtures::csr(abc(), {1, 1, 1}, 3));
  const auto small = minimize(naive);
  const auto classes =
      oracle::nerode_classes([&](const Sequence& s) { return evaluate(naive, s).decision; }, abc(), 7);
  CHECK(small.state_count() == classes);
  for (const auto& w : oracle::words(3, 7)) {
    for (Symbol c = 0; c < 3; ++c) {
      const Sequence s(abc(), w, {c});
      CHECK(evaluate(small, s).decision == evaluate(naive, s).decision);
    }
  }
}

TEST_CASE("minimize merges decided states into terminals") {
  // best of the first two under a > b > c: reading a decides at once
  const auto rule = from_prefix_function(abc(), abc(), 2, [](const Word& w) { return std::min(w[0], w[1]); });
  const auto m = minimize(rule);
  CHECK(std::get<UniformBound>(verify_stopping(m)).bound == 2);
  CHECK(evaluate(m, parse_sequence(abc(), "a|c")).stop_position == 1);
  // undecided: the root, after b, after c
  CHECK(m.state_count() == 3 + 3);
}

TEST_CASE("minimize handles constant rules") {
  const auto X = xy();
  const auto aut = from_prefix_function(X, X, 2, [](const Word&) { return Decision{1}; });
  const auto m = minimize(aut);
  CHECK(m.state_count() == 2);
  CHECK(evaluate(m, Sequence::constant(X, 0)).decision == 1);
}

TEST_CASE("to_dot") {
  const std::string dot = to_dot(fixtures::figure1());
  CHECK(dot.find("digraph") == 0);
  std::size_t nodes = 0;
  std::size_t doubles = 0;
  std::istringstream in(dot);
  for (std::string line; std::getline(in, line);) {
    if (line.find("  \"") != 0 || line.find("->") != std::string::npos) continue;
    ++nodes;
    if (line.find("doublecircle") != std::string::npos) ++doubles;
  }
  CHECK(nodes == fixtures::figure1().reachable_states().size());
  CHECK(doubles == 2);
  CHECK(dot.find("label=\"x,y\"") != std::string::npos);
}

TEST_CASE("from_prefix_function") {
  const auto aut = from_prefix_function(abc(), abc(), 2, [](const Word& w) { return w[1]; });
  CHECK(aut.state_count() == 1 + 3 + 3);
  CHECK(evaluate(aut, parse_sequence(abc(), "c b|a")).decision == 1);
  CHECK_THROWS_AS(from_prefix_function(abc(), abc(), 0, [](const Word&) { return Decision{0}; }), InvalidArgument);
}
