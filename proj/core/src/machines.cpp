#include "seqdec/machines.hpp"

#include <algorithm>
#include <unordered_set>

#include "seqdec/errors.hpp"

namespace seqdec {

TwoTapeTm::TwoTapeTm(AlphabetPtr input_alphabet, std::vector<std::string> tape_symbols,
                     std::vector<std::string> states, StateId initial, std::vector<bool> terminal,
                     std::vector<std::optional<TmAction>> delta)
    : input_(std::move(input_alphabet)),
      tape_(std::move(tape_symbols)),
      states_(std::move(states)),
      initial_(initial),
      terminal_(std::move(terminal)),
      delta_(std::move(delta)) {
  if (!input_) throw InvalidArgument("machine without input alphabet");
  std::unordered_set<std::string> seen;
  for (const auto& t : tape_) {
    if (!seen.insert(t).second) throw InvalidArgument("duplicate tape symbol '" + t + "'");
  }
  start_ = tape_index(kStartSymbol);
  blank_ = tape_index(kBlankSymbol);
  for (const auto& name : input_->names()) {
    if (name == kStartSymbol || name == kBlankSymbol) {
      throw InvalidArgument("input alphabet may not contain the start or blank symbol");
    }
    input_map_.push_back(tape_index(name));
  }

  const std::size_t n = states_.size();
  const std::size_t t = tape_.size();
  seen.clear();
  for (const auto& q : states_) {
    if (!seen.insert(q).second) throw InvalidArgument("duplicate machine state '" + q + "'");
  }
  if (n == 0 || initial_ >= n) throw InvalidArgument("machine initial state out of range");
  if (terminal_.size() != n) throw InvalidArgument("terminal flags size mismatch");
  if (delta_.size() != n * t * t) throw InvalidArgument("machine transition table size mismatch");
  for (StateId q = 0; q < n; ++q) {
    for (TapeSymbol in = 0; in < t; ++in) {
      for (TapeSymbol out = 0; out < t; ++out) {
        const auto& a = action(q, in, out);
        const std::string where = "state '" + states_[q] + "' reading (" + tape_[in] + ", " + tape_[out] + ")";
        if (terminal_[q]) {
          if (a) throw InvalidArgument("terminal " + where + " has a transition");
          continue;
        }
        if (!a) throw InvalidArgument("transition missing for " + where);
        if (a->next >= n || a->write >= t) throw InvalidArgument("transition out of range for " + where);
        if (in == start_ && a->input_move == Move::Left) {
          throw InvalidArgument("input head moves left of the start cell in " + where);
        }
        if (out == start_ && a->output_move == Move::Left) {
          throw InvalidArgument("output head moves left of the start cell in " + where);
        }
      }
    }
  }
}

TapeSymbol TwoTapeTm::tape_index(std::string_view name) const {
  auto it = std::find(tape_.begin(), tape_.end(), name);
  if (it == tape_.end()) throw InvalidArgument("unknown tape symbol '" + std::string(name) + "'");
  return static_cast<TapeSymbol>(it - tape_.begin());
}

namespace {

std::size_t moved(std::size_t head, Move m) {
  switch (m) {
    case Move::Left:
      if (head == 0) throw InvalidArgument("head moved left of the start cell");
      return head - 1;
    case Move::Stay:
      return head;
    case Move::Right:
      return head + 1;
  }
  return head;
}

}  // namespace

TmRun tm_simulate(const TwoTapeTm& tm, const Sequence& seq, std::size_t budget) {
  if (budget == 0) throw InvalidArgument("budget must be >= 1");
  if (!same_alphabet(tm.input_alphabet(), seq.alphabet())) throw AlphabetMismatch();
  std::vector<TapeSymbol> output{tm.start_symbol()};
  std::size_t in_head = 0;
  std::size_t out_head = 0;
  StateId q = tm.initial();
  TmRun result;
  while (!tm.is_terminal(q)) {
    if (result.steps == budget) return result;
    const TapeSymbol in = in_head == 0 ? tm.start_symbol() : tm.input_symbol(seq.at(in_head));
    if (out_head >= output.size()) output.resize(out_head + 1, tm.blank_symbol());
    const TmAction& a = *tm.action(q, in, output[out_head]);
    output[out_head] = a.write;
    in_head = moved(in_head, a.input_move);
    out_head = moved(out_head, a.output_move);
    q = a.next;
    ++result.steps;
  }
  result.halted = true;
  result.decision = out_head < output.size() ? output[out_head] : tm.blank_symbol();
  return result;
}

TmRun tm_run(const TwoTapeTm& tm, const Sequence& seq, std::size_t budget) {
  auto r = tm_simulate(tm, seq, budget);
  if (!r.halted) throw BudgetExhausted(r.steps);
  return r;
}

TwoTapeTm automaton_to_tm(const DecisionAutomaton& aut) {
  require_uniform_bound(aut);
  const auto& X = *aut.alphabet();
  const auto& Y = *aut.decisions();

  std::vector<std::string> tape{kStartSymbol, kBlankSymbol};
  for (const auto& name : X.names()) tape.push_back(name);
  for (const auto& name : Y.names()) {
    if (std::find(tape.begin(), tape.end(), name) == tape.end()) tape.push_back(name);
  }
  auto tape_of = [&](const std::string& name) {
    return static_cast<TapeSymbol>(std::find(tape.begin(), tape.end(), name) - tape.begin());
  };

  // machine states: start, one per reachable non-terminal automaton state, halt
  std::vector<std::string> states{"start"};
  std::vector<std::optional<StateId>> machine_state(aut.state_count());
  for (StateId q : aut.reachable_states()) {
    if (aut.is_terminal(q)) continue;
    machine_state[q] = static_cast<StateId>(states.size());
    states.push_back("read:" + aut.state_name(q));
  }
  const StateId halt = static_cast<StateId>(states.size());
  states.push_back("halt");

  const std::size_t t = tape.size();
  std::vector<std::optional<TmAction>> delta(states.size() * t * t);
  auto set = [&](StateId q, TapeSymbol in, TapeSymbol out, TmAction a) { delta[(q * t + in) * t + out] = a; };
  const TapeSymbol start = 0;

  // Pairs the run never reads (anything but the start cell in `start`, or a
  // non-input symbol on the input tape) halt in place.
  for (TapeSymbol in = 0; in < t; ++in) {
    for (TapeSymbol out = 0; out < t; ++out) {
      set(0, in, out, {halt, out, Move::Stay, Move::Stay});
    }
  }
  set(0, start, start, {*machine_state[aut.initial()], start, Move::Right, Move::Right});

  for (StateId q = 0; q < aut.state_count(); ++q) {
    if (!machine_state[q]) continue;
    const StateId mq = *machine_state[q];
    for (TapeSymbol in = 0; in < t; ++in) {
      for (TapeSymbol out = 0; out < t; ++out) set(mq, in, out, {halt, out, Move::Stay, Move::Stay});
    }
    for (Symbol s = 0; s < X.size(); ++s) {
      const StateId to = aut.next(q, s);
      const TapeSymbol in = tape_of(X.name(s));
      for (TapeSymbol out = 0; out < t; ++out) {
        if (aut.is_terminal(to)) {
          set(mq, in, out, {halt, tape_of(Y.name(*aut.output(to))), Move::Stay, Move::Stay});
        } else {
          set(mq, in, out, {*machine_state[to], out, Move::Right, Move::Stay});
        }
      }
    }
  }
  std::vector<bool> terminal(states.size(), false);
  terminal[halt] = true;
  return TwoTapeTm(aut.alphabet(), std::move(tape), std::move(states), 0, std::move(terminal),
                   std::move(delta));
}

}  // namespace seqdec
