#pragma once

// Shared rules for unit and acceptance tests: one mutated rule per axiom and
// a seeded random corpus of satisficing and configuration rules.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "seqdec/analysis.hpp"
#include "seqdec/heuristics.hpp"
#include "seqdec/io.hpp"

namespace fixtures {

using namespace seqdec;

inline AlphabetPtr abc() {
  static const AlphabetPtr X = make_alphabet({"a", "b", "c"});
  return X;
}

inline Rule prefix_rule(const AlphabetPtr& X, std::size_t depth, std::function<Decision(const Word&)> f) {
  return Rule::from_automaton(from_prefix_function(X, X, depth, f));
}

inline CsrSpec csr(const AlphabetPtr& X, std::vector<Rational> w, Rational v) {
  CsrSpec s{X, std::move(w), v};
  s.validate();
  return s;
}

/// Figure 1 as drawn.
inline DecisionAutomaton figure1() {
  return automaton_from_json(Json::parse(R"({
    "alphabet": ["x", "y"],
    "states": ["q0", "1_x", "1_y", "1_x1_y", "2_x", "2_y"],
    "initial": "q0",
    "transitions": {
      "q0": {"x": "1_x", "y": "1_y"},
      "1_x": {"x": "2_x", "y": "1_x1_y"},
      "1_y": {"x": "1_x1_y", "y": "2_y"},
      "1_x1_y": {"x": "2_x", "y": "2_y"}
    },
    "terminal": {"2_x": "x", "2_y": "y"}
  })"));
}

// --- mutants --------------------------------------------------------------

/// choose S(2)
inline Rule second_position() {
  return prefix_rule(abc(), 2, [](const Word& w) { return w[1]; });
}

/// best of the first three under a > b > c
inline Rule best_of_three() {
  return prefix_rule(abc(), 3, [](const Word& w) { return *std::min_element(w.begin(), w.end()); });
}

/// CSR with n_a = 1, n_b = n_c = 3
inline CsrSpec replacement_mutant_spec() { return csr(abc(), {3, 1, 1}, 3); }

/// best of the first three (a > b > c), except c when all three differ
inline Rule alpha_mutant() {
  return prefix_rule(abc(), 3, [](const Word& w) {
    if (w[0] != w[1] && w[1] != w[2] && w[0] != w[2]) return Decision{2};
    return *std::min_element(w.begin(), w.end());
  });
}

/// span-2 tournament: a beats b, b beats c, c beats a
inline Rule tournament() {
  return prefix_rule(abc(), 2, [](const Word& w) {
    if (w[0] == w[1]) return w[0];
    const Symbol lo = std::min(w[0], w[1]);
    const Symbol hi = std::max(w[0], w[1]);
    return (lo == 0 && hi == 2) ? Decision{2} : lo;
  });
}

/// CSR over {a, b} with w(a) = 3, w(b) = 1, v = 3
inline CsrSpec unequal_weights_spec() { return csr(make_alphabet({"a", "b"}), {3, 1}, 3); }

/// Window-4 configuration rule preferring position 1, except on three
/// configuration sets where the choice rotates 1000 > 0100 > 0010 > 1000.
inline Rule rotating_configurations() {
  const AlphabetPtr X = abc();
  return prefix_rule(X, 4, [X](const Word& w) {
    const Sequence s(X, w, {0});
    std::map<BitWord, Symbol> by_config;
    for (Symbol x = 0; x < X->size(); ++x) {
      if (std::find(w.begin(), w.end(), x) != w.end()) by_config.emplace(config_encode(s, x, 4), x);
    }
    auto is = [&](std::initializer_list<const char*> set, const char* pick) -> std::optional<Symbol> {
      if (by_config.size() != set.size()) return std::nullopt;
      for (const char* c : set) {
        if (!by_config.count(BitWord::parse(c))) return std::nullopt;
      }
      return by_config.at(BitWord::parse(pick));
    };
    if (auto y = is({"1000", "0100", "0011"}, "1000")) return *y;
    if (auto y = is({"0100", "0010", "1001"}, "0100")) return *y;
    if (auto y = is({"0010", "1000", "0101"}, "0010")) return *y;
    return w[0];
  });
}

// --- corpus ---------------------------------------------------------------

struct Corpus {
  std::vector<CsrSpec> csr;
  std::vector<OsrSpec> osr;
  std::vector<ConfigRuleSpec> config;
};

/// Positions the rule can read: a bound independent of any analysis.
inline std::size_t declared_bound(const RuleSpec& spec) {
  if (const auto* c = std::get_if<CsrSpec>(&spec)) return csr_uniform_bound(*c);
  if (const auto* o = std::get_if<OsrSpec>(&spec)) return o->span;
  return std::get<ConfigRuleSpec>(spec).window;
}

inline Corpus make_corpus(std::uint32_t seed = 20240917) {
  std::mt19937 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const AlphabetPtr X2 = make_alphabet({"a", "b"});
  const AlphabetPtr X3 = abc();
  auto alphabet = [&] { return uniform(0, 2) == 0 ? X2 : X3; };

  // anchors at the top of the scale
  Corpus c;
  c.csr.push_back(csr(X3, {1, 1, 1}, 3));
  c.osr.push_back(OsrSpec{X3, {0, 1, 2}, 0, 8});
  c.config.push_back(make_config_rule(X3, 6, ComparatorKind::NumericValue));
  while (c.csr.size() < 24) {
    const AlphabetPtr X = alphabet();
    std::vector<Rational> w;
    for (std::size_t i = 0; i < X->size(); ++i) w.emplace_back(uniform(1, 4), uniform(1, 3));
    CsrSpec s{X, std::move(w), Rational(uniform(1, 6), uniform(1, 2))};
    if (csr_uniform_bound(s) <= 8) c.csr.push_back(std::move(s));
  }
  while (c.osr.size() < 20) {
    const AlphabetPtr X = alphabet();
    std::vector<Symbol> order(X->size());
    std::iota(order.begin(), order.end(), Symbol{0});
    std::shuffle(order.begin(), order.end(), rng);
    const Symbol threshold = static_cast<Symbol>(uniform(0, static_cast<int>(X->size()) - 1));
    c.osr.push_back(OsrSpec{X, order, threshold, static_cast<std::size_t>(uniform(1, 8))});
  }
  while (c.config.size() < 14) {
    const AlphabetPtr X = alphabet();
    const std::size_t window = static_cast<std::size_t>(uniform(1, 6));
    switch (uniform(0, 2)) {
      case 0:
        c.config.push_back(make_config_rule(X, window, ComparatorKind::FirstPositionPriority));
        break;
      case 1:
        c.config.push_back(make_config_rule(X, window, ComparatorKind::NumericValue));
        break;
      default: {
        std::vector<std::uint64_t> ranks(std::size_t{1} << window);
        std::iota(ranks.begin(), ranks.end(), std::uint64_t{0});
        std::shuffle(ranks.begin(), ranks.end(), rng);
        std::map<BitWord, std::uint64_t> table;
        for (std::uint32_t bits = 0; bits < ranks.size(); ++bits) table.emplace(BitWord(window, bits), ranks[bits]);
        c.config.push_back(make_config_rule(X, window, table));
      }
    }
  }
  return c;
}

inline std::vector<RuleSpec> all_specs(const Corpus& c) {
  std::vector<RuleSpec> out;
  for (const auto& s : c.csr) out.emplace_back(s);
  for (const auto& s : c.osr) out.emplace_back(s);
  for (const auto& s : c.config) out.emplace_back(s);
  return out;
}

}  // namespace fixtures
