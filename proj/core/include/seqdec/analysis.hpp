#pragma once

// Rule-agnostic analysis of uniform-stopping rules: stopping times, bound
// search, minimal sufficient segments, the seven behavioural axioms and
// identification of satisficing parameters from observed behaviour.
//
// Every "for all tails" quantifier is discharged exactly: a rule whose
// decisions depend only on the first K positions is fully described by its
// decisions on K-prefixes, so checks run over finite witness families.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "seqdec/automaton.hpp"
#include "seqdec/heuristics.hpp"
#include "seqdec/sequence.hpp"

namespace seqdec {

using Evaluator = std::function<Decision(const Sequence&)>;

/// A decision rule, either backed by a stopping automaton or given as a pure
/// black-box evaluator whose decisions the caller asserts depend only on the
/// first `horizon` positions. Cheap to copy; safe for concurrent reads.
class Rule {
 public:
  /// Throws Diverges when the automaton is not a stopping rule.
  static Rule from_automaton(DecisionAutomaton aut);
  static Rule black_box(AlphabetPtr alphabet, AlphabetPtr decisions, Evaluator evaluator,
                        std::size_t horizon);

  const AlphabetPtr& alphabet() const;
  const AlphabetPtr& decisions() const;
  bool is_choice_rule() const { return same_alphabet(alphabet(), decisions()); }
  /// nullptr for black-box rules.
  const DecisionAutomaton* automaton() const;
  /// Uniform bound of the automaton, or the declared horizon.
  std::size_t horizon() const;

  Decision decide(const Sequence& seq) const;

  /// Decisions reachable from some continuation of `prefix`. Black-box rules
  /// tabulate all horizon-length prefixes on first use and throw
  /// HorizonViolation when a decision depends on later positions.
  SymbolSet possible_decisions(const Word& prefix) const;
  /// The decision `prefix` enforces, if it is sufficient.
  std::optional<Decision> settled(const Word& prefix) const;
  /// Some sequence starting with `prefix` whose decision is `y`.
  Sequence completion(const Word& prefix, Decision y) const;

 private:
  struct Impl;
  explicit Rule(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

/// Smallest k with S|_k sufficient.
std::size_t stopping_time(const Rule& rule, const Sequence& seq);

/// Breadth-first search over the segment tree, pruned at sufficient
/// segments: one more than the deepest insufficient segment (0 when the
/// empty segment is already sufficient).
std::size_t uniform_bound_search(const Rule& rule);

struct MinimalSufficient {
  Segment segment;
  Decision decision;
};

/// The minimal sufficient segments in breadth-first (length, then
/// lexicographic) order.
std::vector<MinimalSufficient> enumerate_minimal_sufficient(const Rule& rule);

/// All prefixes of `length` closed by every single-symbol cycle, ordered by
/// prefix then cycle symbol.
std::size_t witness_family_size(const Alphabet& alphabet, std::size_t length);
Sequence witness_family_member(const AlphabetPtr& alphabet, std::size_t length, std::size_t index);

// ---------------------------------------------------------------------------
// Decisive alternatives

struct DecisiveSet {
  SymbolSet decisive = 0;
  SymbolSet non_decisive = 0;
  /// For every non-decisive x: a minimal sufficient segment containing x
  /// whose decision is not x.
  std::map<Symbol, MinimalSufficient> witnesses;
};

DecisiveSet decisive_set(const Rule& rule);

// ---------------------------------------------------------------------------
// Axioms

enum class Axiom {
  Monotonicity,
  InformationalDominance,
  Replacement,
  SequentialAlpha,
  SequentialNbc,
  Neutrality,
  Acyclicity,
};

std::string_view axiom_name(Axiom axiom);

struct MonotonicityWitness {
  enum class Kind { Shift, Deletion };
  Sequence original;
  Kind kind;
  std::size_t position;
  Sequence transformed;
  Decision expected;  // d(original)
  Decision observed;  // d(transformed)
};

struct DominanceWitness {
  Segment minimal;     // minimal sufficient, decides `excluded`
  Segment sufficient;  // sufficient, does not contain `excluded`
  std::size_t truncation;
  Sequence combined;  // minimal|truncation . sufficient . tail, decided as `excluded`
  Decision excluded;
};

struct ReplacementWitness {
  Segment minimal;
  std::size_t position;
  Symbol replacement;
  Segment replaced;  // not sufficient
};

struct AlphaWitness {
  Segment smaller;  // M
  Segment larger;   // M', with M(X) within M'(X)
  Decision smaller_decision;
  Decision larger_decision;
};

struct NbcWitness {
  Symbol x, y, z;
  Segment xy;  // decides x
  Segment yz;  // decides y
  Segment xz;  // decides z
};

struct NeutralityWitness {
  Sequence original;
  Relabeling sigma;
  Sequence relabeled;
  Decision original_decision;
  Decision relabeled_decision;  // differs from sigma(original_decision)
};

/// One edge of the revealed configuration relation: in `witness` the
/// alternative `chosen` (configuration `winner`) is picked over `other`.
struct ConfigEdge {
  BitWord winner;
  BitWord loser;
  Sequence witness;
  Symbol chosen;
  Symbol other;
};

struct AcyclicityWitness {
  std::vector<ConfigEdge> cycle;
};

using Witness = std::variant<MonotonicityWitness, DominanceWitness, ReplacementWitness, AlphaWitness,
                             NbcWitness, NeutralityWitness, AcyclicityWitness>;

struct AxiomReport {
  Axiom axiom;
  std::optional<Witness> failure;
  /// Number of elementary instances examined.
  std::size_t checked = 0;
  std::size_t horizon = 0;

  bool passed() const { return !failure.has_value(); }
};

// All checkers require a choice rule (NotAChoiceRule otherwise) and may
// throw HorizonViolation for black-box rules.
AxiomReport check_monotonicity(const Rule& rule);
AxiomReport check_informational_dominance(const Rule& rule);
AxiomReport check_replacement(const Rule& rule);
AxiomReport check_sequential_alpha(const Rule& rule);
AxiomReport check_snbc(const Rule& rule);
AxiomReport check_neutrality(const Rule& rule);
AxiomReport check_acyclicity(const Rule& rule);

enum class Suite { Csr, Osr, Config, All };
std::vector<AxiomReport> run_suite(const Rule& rule, Suite suite);

/// Re-evaluates a failure witness against the rule; true when the recorded
/// violation reproduces exactly. Passing reports replay as false.
bool replay(const Rule& rule, const AxiomReport& report);

/// Revealed configuration relation on window-K words (K the uniform bound),
/// one witness per edge, keyed by (winner, loser).
std::map<std::pair<BitWord, BitWord>, ConfigEdge> revealed_configuration_relation(const Rule& rule);

/// A linear extension of the revealed relation, best first; nullopt when it
/// has a cycle.
std::optional<std::vector<BitWord>> revealed_configuration_order(const Rule& rule);

// ---------------------------------------------------------------------------
// Identification

struct CsrIdentification {
  CsrSpec spec;
  std::size_t checked;  // witness-family sequences compared
};

struct OsrIdentification {
  OsrSpec spec;
  std::size_t checked;
};

/// v = 1 and w(x) = 1 / n_x where n_x is the stopping time on the constant
/// x sequence. Throws NotCsr when the recovered rule disagrees anywhere on
/// the witness family.
CsrIdentification identify_csr(const Rule& rule);

/// Span from the uniform bound, preference among non-decisive alternatives
/// revealed by minimal sufficient segments, decisive alternatives on top in
/// alphabet order. Throws NotOsr on disagreement.
OsrIdentification identify_osr(const Rule& rule);

}  // namespace seqdec
