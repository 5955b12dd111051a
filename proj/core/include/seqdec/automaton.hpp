#pragma once

// Finite decision automata with absorbing, labelled terminal states.
//
// An automaton reads a sequence one alternative at a time; entering a
// terminal state stops it and the terminal's output is the decision. Outputs
// are indices into a decision alphabet, which for choice rules is the input
// alphabet itself.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seqdec/sequence.hpp"

namespace seqdec {

using StateId = std::uint32_t;
using Decision = std::uint32_t;

class DecisionAutomaton {
 public:
  /// `transitions` is row-major: transitions[q * |X| + s] = delta(q, s).
  /// `outputs[q]` is set exactly for terminal states. Throws InvalidArgument
  /// when delta is partial, a terminal state is not absorbing, the initial
  /// state is terminal, or names are not unique.
  DecisionAutomaton(AlphabetPtr alphabet, AlphabetPtr decisions, std::vector<std::string> state_names,
                    StateId initial, std::vector<StateId> transitions,
                    std::vector<std::optional<Decision>> outputs);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const AlphabetPtr& decisions() const { return decisions_; }
  /// Decisions are drawn from the input alphabet.
  bool is_choice_automaton() const { return same_alphabet(alphabet_, decisions_); }

  std::size_t state_count() const { return names_.size(); }
  StateId initial() const { return initial_; }
  StateId next(StateId q, Symbol s) const { return delta_[q * alphabet_->size() + s]; }
  bool is_terminal(StateId q) const { return outputs_[q].has_value(); }
  const std::optional<Decision>& output(StateId q) const { return outputs_[q]; }
  const std::string& state_name(StateId q) const { return names_.at(q); }
  const std::vector<std::string>& state_names() const { return names_; }
  std::optional<StateId> find_state(std::string_view name) const;

  /// States reachable from the initial state, in breadth-first order.
  std::vector<StateId> reachable_states() const;

 private:
  AlphabetPtr alphabet_;
  AlphabetPtr decisions_;
  std::vector<std::string> names_;
  StateId initial_;
  std::vector<StateId> delta_;
  std::vector<std::optional<Decision>> outputs_;
};

/// Folds delta over `word` starting from `from`.
StateId run(const DecisionAutomaton& aut, const Word& word, StateId from);
StateId run(const DecisionAutomaton& aut, const Segment& seg);

struct Evaluation {
  Decision decision;
  /// Position at which a terminal state was entered.
  std::size_t stop_position;
};

/// Runs the automaton on an infinite sequence. Throws Diverges when a
/// (state, cycle phase) pair repeats before any terminal state is entered.
Evaluation evaluate(const DecisionAutomaton& aut, const Sequence& seq);

/// Per-state classification: a state is decided on y when every terminal
/// reachable from it outputs y and no terminal-free infinite run starts there.
class Decidedness {
 public:
  explicit Decidedness(const DecisionAutomaton& aut);

  std::optional<Decision> decided(StateId q) const;
  /// Bit set of outputs of terminals reachable from q.
  SymbolSet reachable_outputs(StateId q) const { return reachable_[q]; }
  bool may_diverge(StateId q) const { return diverge_[q]; }

 private:
  std::vector<SymbolSet> reachable_;
  std::vector<bool> diverge_;
};

enum class SufficiencyKind { NotSufficient, Sufficient, MinimalSufficient };

struct Sufficiency {
  SufficiencyKind kind = SufficiencyKind::NotSufficient;
  std::optional<Decision> decision;

  bool sufficient() const { return kind != SufficiencyKind::NotSufficient; }
  friend bool operator==(const Sufficiency&, const Sufficiency&) = default;
};

Sufficiency sufficiency(const DecisionAutomaton& aut, const Decidedness& decided, const Segment& seg);
Sufficiency sufficiency(const DecisionAutomaton& aut, const Segment& seg);

struct UniformBound {
  std::size_t bound;
};

struct NonStopping {
  /// Non-terminal states forming a cycle, in traversal order.
  std::vector<StateId> cycle;
  /// Word leading from the initial state to cycle.front().
  Word reaching;
  /// Word driving the automaton once around the cycle.
  Word loop;
};

using StopVerdict = std::variant<UniformBound, NonStopping>;

/// UniformBound(1 + longest path through reachable non-terminal states) when
/// that subgraph is acyclic; NonStopping with a witness otherwise.
StopVerdict verify_stopping(const DecisionAutomaton& aut);

/// verify_stopping, throwing Diverges on NonStopping.
std::size_t require_uniform_bound(const DecisionAutomaton& aut);

/// Partition refinement starting from {decided(y)} classes plus one undecided
/// class. Decided classes collapse into absorbing terminals, so the result
/// agrees with the input on every decision but may stop earlier.
DecisionAutomaton minimize(const DecisionAutomaton& aut);

/// Automaton whose states are the words shorter than `depth`; reading the
/// depth-th symbol enters the terminal for decide(word). Requires depth >= 1.
DecisionAutomaton from_prefix_function(const AlphabetPtr& alphabet, const AlphabetPtr& decisions,
                                       std::size_t depth,
                                       const std::function<Decision(const Word&)>& decide);

/// Graphviz rendering of the reachable part.
std::string to_dot(const DecisionAutomaton& aut);

}  // namespace seqdec
