#include "seqdec/automaton.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "seqdec/errors.hpp"

namespace seqdec {

DecisionAutomaton::DecisionAutomaton(AlphabetPtr alphabet, AlphabetPtr decisions,
                                     std::vector<std::string> state_names, StateId initial,
                                     std::vector<StateId> transitions,
                                     std::vector<std::optional<Decision>> outputs)
    : alphabet_(std::move(alphabet)),
      decisions_(std::move(decisions)),
      names_(std::move(state_names)),
      initial_(initial),
      delta_(std::move(transitions)),
      outputs_(std::move(outputs)) {
  if (!alphabet_ || !decisions_) throw InvalidArgument("automaton needs input and decision alphabets");
  const std::size_t n = names_.size();
  const std::size_t k = alphabet_->size();
  if (n == 0) throw InvalidArgument("automaton has no states");
  if (initial_ >= n) throw InvalidArgument("initial state out of range");
  if (delta_.size() != n * k) throw InvalidArgument("transition table is not total");
  if (outputs_.size() != n) throw InvalidArgument("output table size mismatch");
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (!seen.insert(name).second) throw InvalidArgument("duplicate state name '" + name + "'");
  }
  for (StateId q = 0; q < n; ++q) {
    if (outputs_[q] && *outputs_[q] >= decisions_->size()) {
      throw InvalidArgument("output of state '" + names_[q] + "' outside the decision alphabet");
    }
    for (Symbol s = 0; s < k; ++s) {
      StateId to = next(q, s);
      if (to >= n) throw InvalidArgument("transition target out of range");
      if (outputs_[q] && to != q) {
        throw InvalidArgument("terminal state '" + names_[q] + "' is not absorbing");
      }
    }
  }
  if (outputs_[initial_]) throw InvalidArgument("initial state must not be terminal");
}

std::optional<StateId> DecisionAutomaton::find_state(std::string_view name) const {
  for (StateId q = 0; q < names_.size(); ++q) {
    if (names_[q] == name) return q;
  }
  return std::nullopt;
}

std::vector<StateId> DecisionAutomaton::reachable_states() const {
  std::vector<bool> seen(state_count(), false);
  std::vector<StateId> order{initial_};
  seen[initial_] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol s = 0; s < alphabet_->size(); ++s) {
      StateId to = next(order[i], s);
      if (!seen[to]) {
        seen[to] = true;
        order.push_back(to);
      }
    }
  }
  return order;
}

StateId run(const DecisionAutomaton& aut, const Word& word, StateId from) {
  StateId q = from;
  for (Symbol s : word) {
    if (s >= aut.alphabet()->size()) throw AlphabetMismatch("symbol outside automaton alphabet");
    q = aut.next(q, s);
  }
  return q;
}

StateId run(const DecisionAutomaton& aut, const Segment& seg) {
  if (!same_alphabet(aut.alphabet(), seg.alphabet())) throw AlphabetMismatch();
  return run(aut, seg.word(), aut.initial());
}

Evaluation evaluate(const DecisionAutomaton& aut, const Sequence& seq) {
  if (!same_alphabet(aut.alphabet(), seq.alphabet())) throw AlphabetMismatch();
  StateId q = aut.initial();
  const auto& prefix = seq.prefix();
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    q = aut.next(q, prefix[i]);
    if (aut.is_terminal(q)) return {*aut.output(q), i + 1};
  }
  const auto& cycle = seq.cycle();
  std::vector<bool> seen(aut.state_count() * cycle.size(), false);
  std::size_t position = prefix.size();
  for (std::size_t phase = 0;; phase = (phase + 1) % cycle.size()) {
    const std::size_t key = q * cycle.size() + phase;
    if (seen[key]) {
      throw Diverges("automaton never reaches a terminal state on " + format_sequence(seq) +
                     " (state '" + aut.state_name(q) + "' repeats at cycle phase " +
                     std::to_string(phase) + ")");
    }
    seen[key] = true;
    q = aut.next(q, cycle[phase]);
    ++position;
    if (aut.is_terminal(q)) return {*aut.output(q), position};
  }
}

// Decidedness

Decidedness::Decidedness(const DecisionAutomaton& aut)
    : reachable_(aut.state_count(), 0), diverge_(aut.state_count(), false) {
  const std::size_t n = aut.state_count();
  const std::size_t k = aut.alphabet()->size();

  // predecessor lists over edges leaving non-terminal states
  std::vector<std::vector<StateId>> preds(n);
  for (StateId q = 0; q < n; ++q) {
    if (aut.is_terminal(q)) continue;
    for (Symbol s = 0; s < k; ++s) preds[aut.next(q, s)].push_back(q);
  }

  // reachable outputs: backward propagation from each terminal
  for (StateId f = 0; f < n; ++f) {
    if (!aut.is_terminal(f)) continue;
    const SymbolSet bit = singleton(*aut.output(f));
    std::vector<StateId> stack{f};
    while (!stack.empty()) {
      StateId q = stack.back();
      stack.pop_back();
      if (reachable_[q] & bit) continue;
      reachable_[q] |= bit;
      for (StateId p : preds[q]) stack.push_back(p);
    }
  }

  // divergence: a state may diverge iff it can reach a non-terminal cycle.
  // Peel off non-terminal states all of whose successors are terminal or
  // already peeled; what remains can run forever.
  std::vector<std::size_t> open(n, 0);
  std::vector<StateId> ready;
  for (StateId q = 0; q < n; ++q) {
    if (aut.is_terminal(q)) continue;
    for (Symbol s = 0; s < k; ++s) {
      if (!aut.is_terminal(aut.next(q, s))) ++open[q];
    }
    if (open[q] == 0) ready.push_back(q);
  }
  std::vector<bool> finite(n, false);
  while (!ready.empty()) {
    StateId q = ready.back();
    ready.pop_back();
    finite[q] = true;
    for (StateId p : preds[q]) {
      if (--open[p] == 0) ready.push_back(p);
    }
  }
  for (StateId q = 0; q < n; ++q) diverge_[q] = !aut.is_terminal(q) && !finite[q];
}

std::optional<Decision> Decidedness::decided(StateId q) const {
  if (diverge_[q] || std::popcount(reachable_[q]) != 1) return std::nullopt;
  return static_cast<Decision>(std::countr_zero(reachable_[q]));
}

Sufficiency sufficiency(const DecisionAutomaton& aut, const Decidedness& decided, const Segment& seg) {
  if (!same_alphabet(aut.alphabet(), seg.alphabet())) throw AlphabetMismatch();
  // Walk the prefixes: decidedness is monotone along runs, so the first
  // decided prefix settles minimality. Every proper prefix is still checked.
  StateId q = aut.initial();
  std::optional<Decision> earlier;
  for (Symbol s : seg.word()) {
    if (!earlier) earlier = decided.decided(q);
    q = aut.next(q, s);
  }
  auto d = decided.decided(q);
  if (!d) return {};
  return {earlier ? SufficiencyKind::Sufficient : SufficiencyKind::MinimalSufficient, d};
}

Sufficiency sufficiency(const DecisionAutomaton& aut, const Segment& seg) {
  return sufficiency(aut, Decidedness(aut), seg);
}

// Stopping

StopVerdict verify_stopping(const DecisionAutomaton& aut) {
  const std::size_t n = aut.state_count();
  const std::size_t k = aut.alphabet()->size();

  // BFS tree from the initial state, for reaching words
  std::vector<std::optional<std::pair<StateId, Symbol>>> parent(n);
  std::vector<bool> seen(n, false);
  std::deque<StateId> queue{aut.initial()};
  seen[aut.initial()] = true;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    if (aut.is_terminal(q)) continue;
    for (Symbol s = 0; s < k; ++s) {
      StateId to = aut.next(q, s);
      if (!seen[to]) {
        seen[to] = true;
        parent[to] = std::make_pair(q, s);
        queue.push_back(to);
      }
    }
  }
  auto reaching_word = [&](StateId q) {
    Word w;
    while (parent[q]) {
      w.push_back(parent[q]->second);
      q = parent[q]->first;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  // iterative DFS over reachable non-terminal states; grey = on stack
  enum Color : std::uint8_t { White, Grey, Black };
  std::vector<Color> color(n, White);
  std::vector<std::size_t> longest(n, 0);  // longest non-terminal path from q, in edges
  struct Frame {
    StateId q;
    Symbol next_symbol;
  };
  std::vector<Frame> stack{{aut.initial(), 0}};
  color[aut.initial()] = Grey;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next_symbol == k) {
      color[top.q] = Black;
      stack.pop_back();
      continue;
    }
    const Symbol s = top.next_symbol++;
    const StateId to = aut.next(top.q, s);
    if (aut.is_terminal(to)) continue;
    if (color[to] == Grey) {
      NonStopping witness;
      auto it = std::find_if(stack.begin(), stack.end(), [&](const Frame& f) { return f.q == to; });
      for (auto jt = it; jt != stack.end(); ++jt) {
        witness.cycle.push_back(jt->q);
        witness.loop.push_back(jt->next_symbol - 1);
      }
      witness.reaching = reaching_word(to);
      return witness;
    }
    if (color[to] == White) {
      color[to] = Grey;
      stack.push_back({to, 0});
    }
  }

  // acyclic: longest paths by memoised recursion in reverse topological order
  std::vector<StateId> order;
  std::vector<bool> placed(n, false);
  std::vector<std::pair<StateId, Symbol>> dfs{{aut.initial(), 0}};
  placed[aut.initial()] = true;
  while (!dfs.empty()) {
    auto& [q, s] = dfs.back();
    if (s == k) {
      order.push_back(q);
      dfs.pop_back();
      continue;
    }
    const StateId to = aut.next(q, s++);
    if (!aut.is_terminal(to) && !placed[to]) {
      placed[to] = true;
      dfs.push_back({to, 0});
    }
  }
  for (StateId q : order) {  // post-order: successors first
    for (Symbol s = 0; s < k; ++s) {
      const StateId to = aut.next(q, s);
      if (!aut.is_terminal(to)) longest[q] = std::max(longest[q], longest[to] + 1);
    }
  }
  return UniformBound{longest[aut.initial()] + 1};
}

std::size_t require_uniform_bound(const DecisionAutomaton& aut) {
  auto verdict = verify_stopping(aut);
  if (auto* ns = std::get_if<NonStopping>(&verdict)) {
    throw Diverges("automaton is not a stopping rule: non-terminal cycle through state '" +
                   aut.state_name(ns->cycle.front()) + "'");
  }
  return std::get<UniformBound>(verdict).bound;
}

// Minimization

DecisionAutomaton minimize(const DecisionAutomaton& aut) {
  require_uniform_bound(aut);
  const std::size_t k = aut.alphabet()->size();
  const std::size_t ndec = aut.decisions()->size();
  const Decidedness decided(aut);
  const auto reach = aut.reachable_states();

  // blocks 0..ndec-1 are the decided classes; undecided blocks follow
  std::unordered_map<StateId, std::size_t> block;
  std::vector<StateId> undecided;
  for (StateId q : reach) {
    if (auto d = decided.decided(q)) {
      block[q] = *d;
    } else {
      block[q] = ndec;
      undecided.push_back(q);
    }
  }

  std::size_t block_count = ndec + (undecided.empty() ? 0 : 1);
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> signature_to_block;
    std::unordered_map<StateId, std::size_t> refined;
    for (StateId q : undecided) {
      std::vector<std::size_t> sig{block[q]};
      for (Symbol s = 0; s < k; ++s) sig.push_back(block[aut.next(q, s)]);
      auto [it, inserted] = signature_to_block.emplace(sig, ndec + signature_to_block.size());
      refined[q] = it->second;
    }
    const std::size_t new_count = ndec + signature_to_block.size();
    for (auto& [q, b] : refined) block[q] = b;
    if (new_count == block_count) break;
    block_count = new_count;
  }

  // Renumber blocks in BFS order from the initial block, so the result is
  // canonical up to the input's state naming.
  std::vector<std::optional<StateId>> block_state(block_count + ndec);
  std::vector<StateId> representative;
  std::vector<std::size_t> block_of_state;
  auto rep_of_block = [&](std::size_t b) {
    // terminal representatives carry the most telling names
    std::optional<StateId> best;
    for (StateId q : reach) {
      if (block[q] != b) continue;
      if (!best || (aut.is_terminal(q) && !aut.is_terminal(*best))) best = q;
      if (aut.is_terminal(*best)) break;
    }
    return *best;
  };

  std::vector<std::string> names;
  std::vector<std::optional<Decision>> outputs;
  std::vector<StateId> delta;
  std::deque<std::size_t> queue;
  auto intern = [&](std::size_t b) {
    if (!block_state[b]) {
      block_state[b] = static_cast<StateId>(representative.size());
      const StateId rep = rep_of_block(b);
      representative.push_back(rep);
      block_of_state.push_back(b);
      names.push_back(aut.state_name(rep));
      outputs.push_back(b < ndec ? std::optional<Decision>(static_cast<Decision>(b)) : std::nullopt);
      queue.push_back(b);
    }
    return *block_state[b];
  };

  const std::size_t initial_block = block[aut.initial()];
  if (initial_block < ndec) {
    // Constant rule: keep a non-terminal start that moves to the terminal.
    names.push_back(aut.state_name(aut.initial()));
    outputs.push_back(std::nullopt);
    representative.push_back(aut.initial());
    block_of_state.push_back(block_count + ndec);  // sentinel, never a real block
    const StateId term = intern(initial_block);
    queue.clear();
    delta.assign(2 * k, 0);
    for (Symbol s = 0; s < k; ++s) {
      delta[s] = term;
      delta[k + s] = term;
    }
    if (names[0] == names[1]) names[0] += "'";
    return DecisionAutomaton(aut.alphabet(), aut.decisions(), std::move(names), 0, std::move(delta),
                             std::move(outputs));
  }

  intern(initial_block);
  while (!queue.empty()) {
    const std::size_t b = queue.front();
    queue.pop_front();
    const StateId rep = rep_of_block(b);
    for (Symbol s = 0; s < k; ++s) intern(b < ndec ? b : block[aut.next(rep, s)]);
  }
  delta.resize(representative.size() * k);
  for (StateId q = 0; q < representative.size(); ++q) {
    const std::size_t b = block_of_state[q];
    for (Symbol s = 0; s < k; ++s) {
      delta[q * k + s] = b < ndec ? q : *block_state[block[aut.next(representative[q], s)]];
    }
  }
  return DecisionAutomaton(aut.alphabet(), aut.decisions(), std::move(names), 0, std::move(delta),
                           std::move(outputs));
}

// Prefix trees

DecisionAutomaton from_prefix_function(const AlphabetPtr& alphabet, const AlphabetPtr& decisions,
                                       std::size_t depth,
                                       const std::function<Decision(const Word&)>& decide) {
  if (depth == 0) throw InvalidArgument("prefix tree depth must be >= 1");
  const std::size_t k = alphabet->size();
  // internal nodes: all words of length < depth, numbered level by level
  std::vector<std::size_t> level_start{0};
  std::size_t width = 1;
  for (std::size_t m = 0; m < depth; ++m) {
    level_start.push_back(level_start.back() + width);
    width *= k;
  }
  const std::size_t internal = level_start.back();
  const std::size_t n = internal + decisions->size();

  std::vector<std::string> names(n);
  std::vector<std::optional<Decision>> outputs(n);
  std::vector<StateId> delta(n * k);
  for (Decision y = 0; y < decisions->size(); ++y) {
    const StateId f = static_cast<StateId>(internal + y);
    names[f] = "out:" + decisions->name(y);
    outputs[f] = y;
    for (Symbol s = 0; s < k; ++s) delta[f * k + s] = f;
  }
  for (std::size_t m = 0; m < depth; ++m) {
    for (const auto& w : enumerate_words(k, m)) {
      const StateId q = static_cast<StateId>(level_start[m] + word_rank(w, k));
      names[q] = m == 0 ? "q0" : "q[" + format_word(*alphabet, w) + "]";
      Word child = w;
      child.push_back(0);
      for (Symbol s = 0; s < k; ++s) {
        child.back() = s;
        StateId to;
        if (m + 1 < depth) {
          to = static_cast<StateId>(level_start[m + 1] + word_rank(child, k));
        } else {
          const Decision y = decide(child);
          if (y >= decisions->size()) throw InvalidArgument("decision outside decision alphabet");
          to = static_cast<StateId>(internal + y);
        }
        delta[q * k + s] = to;
      }
    }
  }
  return DecisionAutomaton(alphabet, decisions, std::move(names), 0, std::move(delta), std::move(outputs));
}

// DOT

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const DecisionAutomaton& aut) {
  const auto& X = *aut.alphabet();
  std::ostringstream out;
  out << "digraph automaton {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  out << "  __start [shape=point, label=\"\"];\n";
  const auto reach = aut.reachable_states();
  for (StateId q : reach) {
    out << "  " << quoted(aut.state_name(q));
    if (aut.is_terminal(q)) {
      out << " [shape=doublecircle, label="
          << quoted(aut.state_name(q) + "\n→ " + aut.decisions()->name(*aut.output(q))) << "]";
    } else {
      out << " [label=" << quoted(aut.state_name(q)) << "]";
    }
    out << ";\n";
  }
  out << "  __start -> " << quoted(aut.state_name(aut.initial())) << ";\n";
  for (StateId q : reach) {
    // parallel edges merged into one labelled edge, in symbol order
    std::map<StateId, std::vector<Symbol>> by_target;
    std::vector<StateId> targets;
    for (Symbol s = 0; s < X.size(); ++s) {
      const StateId to = aut.next(q, s);
      auto& syms = by_target[to];
      if (syms.empty()) targets.push_back(to);
      syms.push_back(s);
    }
    for (StateId to : targets) {
      std::string label;
      for (Symbol s : by_target[to]) {
        if (!label.empty()) label += ",";
        label += X.name(s);
      }
      out << "  " << quoted(aut.state_name(q)) << " -> " << quoted(aut.state_name(to))
          << " [label=" << quoted(label) << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace seqdec
