#pragma once

// Two-tape Turing machines reading an infinite input sequence and leaving
// their decision under the output head.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqdec/automaton.hpp"
#include "seqdec/sequence.hpp"

namespace seqdec {

using TapeSymbol = std::uint32_t;

enum class Move : std::uint8_t { Left, Stay, Right };

struct TmAction {
  StateId next;
  TapeSymbol write;  // written on the output tape
  Move input_move;
  Move output_move;
};

inline constexpr const char* kStartSymbol = "◁";
inline constexpr const char* kBlankSymbol = "_";

class TwoTapeTm {
 public:
  /// `tape_symbols` must contain the start and blank symbols and every
  /// input alphabet name. `delta[(q * |T| + in) * |T| + out]` is the action
  /// for state q reading `in` on the input tape and `out` on the output tape;
  /// it must be set for every pair when q is non-terminal and unset when q is
  /// terminal. Transitions moving left off the start symbol are rejected.
  TwoTapeTm(AlphabetPtr input_alphabet, std::vector<std::string> tape_symbols,
            std::vector<std::string> states, StateId initial, std::vector<bool> terminal,
            std::vector<std::optional<TmAction>> delta);

  const AlphabetPtr& input_alphabet() const { return input_; }
  const std::vector<std::string>& tape_symbols() const { return tape_; }
  TapeSymbol tape_index(std::string_view name) const;
  TapeSymbol start_symbol() const { return start_; }
  TapeSymbol blank_symbol() const { return blank_; }
  TapeSymbol input_symbol(Symbol s) const { return input_map_[s]; }

  std::size_t state_count() const { return states_.size(); }
  const std::string& state_name(StateId q) const { return states_.at(q); }
  const std::vector<std::string>& state_names() const { return states_; }
  StateId initial() const { return initial_; }
  bool is_terminal(StateId q) const { return terminal_[q]; }
  const std::optional<TmAction>& action(StateId q, TapeSymbol in, TapeSymbol out) const {
    return delta_[(q * tape_.size() + in) * tape_.size() + out];
  }

 private:
  AlphabetPtr input_;
  std::vector<std::string> tape_;
  std::vector<std::string> states_;
  StateId initial_;
  std::vector<bool> terminal_;
  std::vector<std::optional<TmAction>> delta_;
  TapeSymbol start_ = 0;
  TapeSymbol blank_ = 0;
  std::vector<TapeSymbol> input_map_;
};

struct TmRun {
  /// Symbol under the output head at halt; unset when not halted.
  std::optional<TapeSymbol> decision;
  std::size_t steps = 0;
  bool halted = false;
};

/// Runs for at most `budget` steps (one step per transition applied). The
/// input tape holds the start symbol followed by S(1), S(2), ...
TmRun tm_simulate(const TwoTapeTm& tm, const Sequence& seq, std::size_t budget);

/// tm_simulate, throwing BudgetExhausted when the machine has not halted.
TmRun tm_run(const TwoTapeTm& tm, const Sequence& seq, std::size_t budget);

/// Embeds a stopping automaton: one reading state per non-terminal automaton
/// state plus a start and a halt state. Halts after stop_position + 1 steps.
TwoTapeTm automaton_to_tm(const DecisionAutomaton& aut);

}  // namespace seqdec
