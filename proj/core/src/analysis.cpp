#include "seqdec/analysis.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <mutex>
#include <set>
#include <stdexcept>

#include "parallel.hpp"
#include "seqdec/errors.hpp"

namespace seqdec {

// ---------------------------------------------------------------------------
// Rule

struct Rule::Impl {
  AlphabetPtr alphabet;
  AlphabetPtr decisions;
  std::size_t horizon = 0;

  std::optional<DecisionAutomaton> aut;
  std::optional<Decidedness> decided;

  Evaluator evaluator;
  std::once_flag table_once;
  // levels[m][rank(w)] = decisions reachable below the length-m word w
  std::vector<std::vector<SymbolSet>> levels;

  void build_table();
  SymbolSet table_lookup(const Word& prefix);
};

namespace {

constexpr std::size_t kMaxTable = std::size_t{1} << 24;

Decision checked_decision(const Rule& rule, Decision d) {
  if (d >= rule.decisions()->size()) throw InvalidArgument("evaluator returned a decision outside its alphabet");
  return d;
}

}  // namespace

void Rule::Impl::build_table() {
  const std::size_t k = alphabet->size();
  std::size_t width = 1;
  for (std::size_t m = 0; m < horizon; ++m) {
    width *= k;
    if (width > kMaxTable) throw ResourceError("horizon too large to tabulate");
  }
  std::vector<SymbolSet> bottom(width, 0);
  for (const auto& w : enumerate_words(k, horizon)) {
    const Decision first = evaluator(Sequence(alphabet, w, {0}));
    if (first >= decisions->size()) throw InvalidArgument("evaluator returned a decision outside its alphabet");
    for (Symbol c = 1; c < k; ++c) {
      const Decision d = evaluator(Sequence(alphabet, w, {c}));
      if (d != first) {
        throw HorizonViolation("decision on '" + format_sequence(Sequence(alphabet, w, {c})) +
                               "' differs from '" + format_sequence(Sequence(alphabet, w, {0})) +
                               "': it depends on positions beyond horizon " + std::to_string(horizon));
      }
    }
    bottom[word_rank(w, k)] = singleton(first);
  }
  levels.assign(horizon + 1, {});
  levels[horizon] = std::move(bottom);
  for (std::size_t m = horizon; m-- > 0;) {
    const auto& below = levels[m + 1];
    auto& here = levels[m];
    here.assign(below.size() / k, 0);
    for (std::size_t r = 0; r < below.size(); ++r) here[r / k] |= below[r];
  }
}

SymbolSet Rule::Impl::table_lookup(const Word& prefix) {
  std::call_once(table_once, [this] { build_table(); });
  const std::size_t m = std::min(prefix.size(), horizon);
  return levels[m][word_rank(Word(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(m)),
                             alphabet->size())];
}

Rule Rule::from_automaton(DecisionAutomaton aut) {
  auto impl = std::make_shared<Impl>();
  impl->horizon = require_uniform_bound(aut);
  impl->alphabet = aut.alphabet();
  impl->decisions = aut.decisions();
  impl->decided.emplace(aut);
  impl->aut.emplace(std::move(aut));
  return Rule(std::move(impl));
}

Rule Rule::black_box(AlphabetPtr alphabet, AlphabetPtr decisions, Evaluator evaluator, std::size_t horizon) {
  if (!alphabet || !decisions) throw InvalidArgument("black-box rule needs alphabets");
  if (horizon == 0) throw InvalidArgument("horizon must be >= 1");
  if (!evaluator) throw InvalidArgument("black-box rule needs an evaluator");
  auto impl = std::make_shared<Impl>();
  impl->alphabet = std::move(alphabet);
  impl->decisions = std::move(decisions);
  impl->evaluator = std::move(evaluator);
  impl->horizon = horizon;
  return Rule(std::move(impl));
}

const AlphabetPtr& Rule::alphabet() const { return impl_->alphabet; }
const AlphabetPtr& Rule::decisions() const { return impl_->decisions; }
const DecisionAutomaton* Rule::automaton() const { return impl_->aut ? &*impl_->aut : nullptr; }
std::size_t Rule::horizon() const { return impl_->horizon; }

Decision Rule::decide(const Sequence& seq) const {
  if (!same_alphabet(alphabet(), seq.alphabet())) throw AlphabetMismatch();
  if (impl_->aut) return evaluate(*impl_->aut, seq).decision;
  return checked_decision(*this, impl_->evaluator(seq));
}

SymbolSet Rule::possible_decisions(const Word& prefix) const {
  if (impl_->aut) {
    return impl_->decided->reachable_outputs(run(*impl_->aut, prefix, impl_->aut->initial()));
  }
  return impl_->table_lookup(prefix);
}

std::optional<Decision> Rule::settled(const Word& prefix) const {
  const SymbolSet mask = possible_decisions(prefix);
  if (std::popcount(mask) != 1) return std::nullopt;
  return static_cast<Decision>(std::countr_zero(mask));
}

Sequence Rule::completion(const Word& prefix, Decision y) const {
  if (!contains(possible_decisions(prefix), y)) {
    throw InvalidArgument("no continuation of the prefix reaches that decision");
  }
  const std::size_t k = alphabet()->size();
  Word w = prefix;
  if (impl_->aut) {
    const auto& aut = *impl_->aut;
    const StateId from = run(aut, prefix, aut.initial());
    std::vector<std::optional<std::pair<StateId, Symbol>>> parent(aut.state_count());
    std::vector<bool> seen(aut.state_count(), false);
    std::deque<StateId> queue{from};
    seen[from] = true;
    StateId hit = from;
    while (!queue.empty()) {
      const StateId q = queue.front();
      queue.pop_front();
      if (aut.is_terminal(q) && *aut.output(q) == y) {
        hit = q;
        break;
      }
      for (Symbol s = 0; s < k; ++s) {
        const StateId to = aut.next(q, s);
        if (!seen[to]) {
          seen[to] = true;
          parent[to] = std::make_pair(q, s);
          queue.push_back(to);
        }
      }
    }
    Word tail;
    for (StateId q = hit; parent[q]; q = parent[q]->first) tail.push_back(parent[q]->second);
    w.insert(w.end(), tail.rbegin(), tail.rend());
  } else {
    while (w.size() < impl_->horizon) {
      w.push_back(0);
      while (!contains(impl_->table_lookup(w), y)) ++w.back();
    }
  }
  return Sequence(alphabet(), std::move(w), {0});
}

// ---------------------------------------------------------------------------
// Stopping times and minimal sufficient segments

std::size_t stopping_time(const Rule& rule, const Sequence& seq) {
  if (!same_alphabet(rule.alphabet(), seq.alphabet())) throw AlphabetMismatch();
  Word prefix;
  for (std::size_t k = 0; k <= rule.horizon(); ++k) {
    if (k > 0) prefix.push_back(seq.at(k));
    if (rule.settled(prefix)) return k;
  }
  throw std::logic_error("no sufficient prefix within the rule's horizon");
}

namespace {

/// Breadth-first walk of the segment tree, expanding only insufficient
/// segments. `visit(word, settled)` sees every generated segment.
template <class Visit>
void walk_segment_tree(const Rule& rule, Visit&& visit) {
  const std::size_t k = rule.alphabet()->size();
  std::vector<Word> frontier{Word{}};
  for (std::size_t depth = 0; !frontier.empty(); ++depth) {
    if (depth > rule.horizon()) throw std::logic_error("segment tree deeper than the rule's horizon");
    std::vector<Word> next;
    for (auto& w : frontier) {
      const auto d = rule.settled(w);
      visit(w, d);
      if (d) continue;
      for (Symbol s = 0; s < k; ++s) {
        Word child = w;
        child.push_back(s);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
}

}  // namespace

std::size_t uniform_bound_search(const Rule& rule) {
  std::size_t bound = 0;
  walk_segment_tree(rule, [&](const Word& w, const std::optional<Decision>& d) {
    if (!d) bound = std::max(bound, w.size() + 1);
  });
  return bound;
}

std::vector<MinimalSufficient> enumerate_minimal_sufficient(const Rule& rule) {
  std::vector<MinimalSufficient> out;
  walk_segment_tree(rule, [&](const Word& w, const std::optional<Decision>& d) {
    if (d) out.push_back({Segment(rule.alphabet(), w), *d});
  });
  return out;
}

std::size_t witness_family_size(const Alphabet& alphabet, std::size_t length) {
  return enumerate_words(alphabet.size(), length).count() * alphabet.size();
}

Sequence witness_family_member(const AlphabetPtr& alphabet, std::size_t length, std::size_t index) {
  const std::size_t k = alphabet->size();
  const Symbol cycle = static_cast<Symbol>(index % k);
  std::size_t rank = index / k;
  Word w(length);
  for (std::size_t i = length; i-- > 0;) {
    w[i] = static_cast<Symbol>(rank % k);
    rank /= k;
  }
  return Sequence(alphabet, std::move(w), {cycle});
}

// ---------------------------------------------------------------------------
// Decisive alternatives

namespace {

void require_choice_rule(const Rule& rule) {
  if (!rule.is_choice_rule()) throw NotAChoiceRule();
}

bool is_minimal_sufficient(const Rule& rule, const Segment& seg, Decision d) {
  if (rule.settled(seg.word()) != d) return false;
  if (seg.empty()) return true;
  return !rule.settled(seg.prefix(seg.size() - 1).word());
}

std::vector<MinimalSufficient> restrict_to(const std::vector<MinimalSufficient>& ms, SymbolSet allowed) {
  std::vector<MinimalSufficient> out;
  for (const auto& m : ms) {
    if (is_subset(m.segment.symbols(), allowed)) out.push_back(m);
  }
  return out;
}

DecisiveSet decisive_from(const Rule& rule, const std::vector<MinimalSufficient>& ms) {
  DecisiveSet out;
  for (const auto& m : ms) {
    const SymbolSet present = m.segment.symbols();
    for (Symbol x = 0; x < rule.alphabet()->size(); ++x) {
      if (x != m.decision && contains(present, x) && !out.witnesses.count(x)) out.witnesses.emplace(x, m);
    }
  }
  for (Symbol x = 0; x < rule.alphabet()->size(); ++x) {
    if (out.witnesses.count(x)) {
      out.non_decisive |= singleton(x);
    } else {
      out.decisive |= singleton(x);
    }
  }
  return out;
}

std::size_t family_length(const Rule& rule) { return std::max<std::size_t>(uniform_bound_search(rule), 1); }

}  // namespace

DecisiveSet decisive_set(const Rule& rule) {
  require_choice_rule(rule);
  return decisive_from(rule, enumerate_minimal_sufficient(rule));
}

// ---------------------------------------------------------------------------
// Axioms

std::string_view axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::Monotonicity: return "monotonicity";
    case Axiom::InformationalDominance: return "informational-dominance";
    case Axiom::Replacement: return "replacement";
    case Axiom::SequentialAlpha: return "sequential-alpha";
    case Axiom::SequentialNbc: return "sequential-nbc";
    case Axiom::Neutrality: return "neutrality";
    case Axiom::Acyclicity: return "acyclicity";
  }
  return "unknown";
}

AxiomReport check_monotonicity(const Rule& rule) {
  require_choice_rule(rule);
  const std::size_t K = family_length(rule);
  const auto& X = rule.alphabet();
  const std::size_t n = witness_family_size(*X, K + 1);

  auto violation = [&](std::size_t index) -> std::optional<MonotonicityWitness> {
    const Sequence s = witness_family_member(X, K + 1, index);
    const Decision x = rule.decide(s);
    for (std::size_t k = 1; k <= K; ++k) {
      if (s.at(k + 1) == x) {
        Sequence t = favorable_shift(s, k);
        const Decision d = rule.decide(t);
        if (d != x) return MonotonicityWitness{s, MonotonicityWitness::Kind::Shift, k, std::move(t), x, d};
      }
      if (s.at(k) != x) {
        Sequence t = favorable_deletion(s, k);
        const Decision d = rule.decide(t);
        if (d != x) return MonotonicityWitness{s, MonotonicityWitness::Kind::Deletion, k, std::move(t), x, d};
      }
    }
    return std::nullopt;
  };

  AxiomReport report{Axiom::Monotonicity, std::nullopt, n, uniform_bound_search(rule)};
  if (auto bad = detail::first_failure(n, [&](std::size_t i) { return violation(i).has_value(); })) {
    report.failure = *violation(*bad);
    report.checked = *bad + 1;
  }
  return report;
}

AxiomReport check_informational_dominance(const Rule& rule) {
  require_choice_rule(rule);
  const std::size_t K = uniform_bound_search(rule);
  const auto& X = rule.alphabet();
  const auto ms = enumerate_minimal_sufficient(rule);

  struct SufficientSegment {
    Word word;
    SymbolSet symbols;
  };
  std::vector<SufficientSegment> sufficient;
  for (std::size_t len = 0; len <= K; ++len) {
    for (const auto& w : enumerate_words(X->size(), len)) {
      if (rule.settled(w)) sufficient.push_back({w, Segment(X, w).symbols()});
    }
  }

  auto violation = [&](std::size_t index) -> std::optional<DominanceWitness> {
    const auto& m = ms[index];
    const Decision x = m.decision;
    for (std::size_t k = 0; k < m.segment.size(); ++k) {
      const Word head = m.segment.prefix(k).word();
      for (const auto& n : sufficient) {
        if (contains(n.symbols, x)) continue;
        Word combined = head;
        combined.insert(combined.end(), n.word.begin(), n.word.end());
        if (contains(rule.possible_decisions(combined), x)) {
          return DominanceWitness{m.segment, Segment(X, n.word), k, rule.completion(combined, x), x};
        }
      }
    }
    return std::nullopt;
  };

  auto instances = [&](std::size_t upto) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < upto; ++i) {
      const auto x = ms[i].decision;
      const auto excluding = std::count_if(sufficient.begin(), sufficient.end(),
                                           [&](const SufficientSegment& n) { return !contains(n.symbols, x); });
      count += ms[i].segment.size() * static_cast<std::size_t>(excluding);
    }
    return count;
  };

  AxiomReport report{Axiom::InformationalDominance, std::nullopt, 0, K};
  if (auto bad = detail::first_failure(ms.size(), [&](std::size_t i) { return violation(i).has_value(); })) {
    report.failure = *violation(*bad);
    report.checked = instances(*bad + 1);
  } else {
    report.checked = instances(ms.size());
  }
  return report;
}

AxiomReport check_replacement(const Rule& rule) {
  require_choice_rule(rule);
  const auto ms = enumerate_minimal_sufficient(rule);
  const DecisiveSet D = decisive_from(rule, ms);
  const auto candidates = restrict_to(ms, D.non_decisive);
  const auto& X = rule.alphabet();

  AxiomReport report{Axiom::Replacement, std::nullopt, 0, uniform_bound_search(rule)};
  for (const auto& m : candidates) {
    for (std::size_t p = 1; p <= m.segment.size(); ++p) {
      for (Symbol y = 0; y < X->size(); ++y) {
        if (!contains(D.non_decisive, y)) continue;
        ++report.checked;
        Word w = m.segment.word();
        w[p - 1] = y;
        if (!rule.settled(w)) {
          report.failure = ReplacementWitness{m.segment, p, y, Segment(X, std::move(w))};
          return report;
        }
      }
    }
  }
  return report;
}

AxiomReport check_sequential_alpha(const Rule& rule) {
  require_choice_rule(rule);
  const auto ms = enumerate_minimal_sufficient(rule);
  const DecisiveSet D = decisive_from(rule, ms);
  const auto candidates = restrict_to(ms, D.non_decisive);

  AxiomReport report{Axiom::SequentialAlpha, std::nullopt, 0, uniform_bound_search(rule)};
  for (const auto& m : candidates) {
    const SymbolSet small = m.segment.symbols();
    for (const auto& big : candidates) {
      if (!is_subset(small, big.segment.symbols()) || !contains(small, big.decision)) continue;
      ++report.checked;
      if (big.decision != m.decision) {
        report.failure = AlphaWitness{m.segment, big.segment, m.decision, big.decision};
        return report;
      }
    }
  }
  return report;
}

AxiomReport check_snbc(const Rule& rule) {
  require_choice_rule(rule);
  const auto ms = enumerate_minimal_sufficient(rule);
  const DecisiveSet D = decisive_from(rule, ms);
  const auto candidates = restrict_to(ms, D.non_decisive);
  const std::size_t k = rule.alphabet()->size();

  // first two-alternative minimal sufficient segment per (symbol set, decision)
  std::map<std::pair<SymbolSet, Decision>, Segment> pairs;
  for (const auto& m : candidates) {
    const SymbolSet set = m.segment.symbols();
    if (std::popcount(set) == 2) pairs.emplace(std::make_pair(set, m.decision), m.segment);
  }
  auto find = [&](Symbol a, Symbol b, Decision d) -> const Segment* {
    auto it = pairs.find({singleton(a) | singleton(b), d});
    return it == pairs.end() ? nullptr : &it->second;
  };

  AxiomReport report{Axiom::SequentialNbc, std::nullopt, 0, uniform_bound_search(rule)};
  for (Symbol x = 0; x < k; ++x) {
    for (Symbol y = 0; y < k; ++y) {
      for (Symbol z = 0; z < k; ++z) {
        if (x == y || y == z || x == z) continue;
        const Segment* xy = find(x, y, x);
        const Segment* yz = find(y, z, y);
        if (!xy || !yz) continue;
        ++report.checked;
        if (const Segment* xz = find(x, z, z)) {
          report.failure = NbcWitness{x, y, z, *xy, *yz, *xz};
          return report;
        }
      }
    }
  }
  return report;
}

AxiomReport check_neutrality(const Rule& rule) {
  require_choice_rule(rule);
  const std::size_t K = family_length(rule);
  const auto& X = rule.alphabet();
  const auto sigmas = all_relabelings(X->size());
  const std::size_t n = witness_family_size(*X, K);

  auto violation = [&](std::size_t index) -> std::optional<NeutralityWitness> {
    const Sequence s = witness_family_member(X, K, index);
    const Decision x = rule.decide(s);
    for (const auto& sigma : sigmas) {
      Sequence t = relabel(s, sigma);
      const Decision d = rule.decide(t);
      if (d != sigma(x)) return NeutralityWitness{s, sigma, std::move(t), x, d};
    }
    return std::nullopt;
  };

  AxiomReport report{Axiom::Neutrality, std::nullopt, n * sigmas.size(), uniform_bound_search(rule)};
  if (auto bad = detail::first_failure(n, [&](std::size_t i) { return violation(i).has_value(); })) {
    report.failure = *violation(*bad);
    report.checked = (*bad + 1) * sigmas.size();
  }
  return report;
}

std::map<std::pair<BitWord, BitWord>, ConfigEdge> revealed_configuration_relation(const Rule& rule) {
  require_choice_rule(rule);
  const std::size_t K = family_length(rule);
  const auto& X = rule.alphabet();
  std::map<std::pair<BitWord, BitWord>, ConfigEdge> edges;
  const std::size_t n = witness_family_size(*X, K);
  for (std::size_t i = 0; i < n; ++i) {
    const Sequence s = witness_family_member(X, K, i);
    const Decision x = rule.decide(s);
    const BitWord winner = config_encode(s, x, K);
    const SymbolSet present = prefix_of(s, K).symbols();
    for (Symbol y = 0; y < X->size(); ++y) {
      if (y == x || !contains(present, y)) continue;
      const BitWord loser = config_encode(s, y, K);
      edges.emplace(std::make_pair(winner, loser), ConfigEdge{winner, loser, s, x, y});
    }
  }
  return edges;
}

namespace {

using ConfigGraph = std::map<BitWord, std::vector<BitWord>>;

ConfigGraph adjacency(const std::map<std::pair<BitWord, BitWord>, ConfigEdge>& edges) {
  ConfigGraph g;
  for (const auto& [key, e] : edges) {
    g[key.first].push_back(key.second);
    g[key.second];
  }
  return g;
}

}  // namespace

AxiomReport check_acyclicity(const Rule& rule) {
  const auto edges = revealed_configuration_relation(rule);
  const auto graph = adjacency(edges);
  const std::size_t K = uniform_bound_search(rule);

  // shortest cycle overall; ties go to the smallest starting word
  std::optional<std::vector<BitWord>> best;
  for (const auto& [start, _] : graph) {
    std::map<BitWord, BitWord> parent;
    std::deque<BitWord> queue{start};
    std::optional<BitWord> closing;
    while (!queue.empty() && !closing) {
      const BitWord u = queue.front();
      queue.pop_front();
      for (const auto& v : graph.at(u)) {
        if (v == start) {
          closing = u;
          break;
        }
        if (!parent.count(v)) {
          parent.emplace(v, u);
          queue.push_back(v);
        }
      }
    }
    if (!closing) continue;
    std::vector<BitWord> cycle{*closing};
    for (BitWord u = *closing; u != start;) {
      u = parent.at(u);
      cycle.push_back(u);
    }
    std::reverse(cycle.begin(), cycle.end());  // start ... closing
    if (!best || cycle.size() < best->size()) best = std::move(cycle);
  }

  AxiomReport report{Axiom::Acyclicity, std::nullopt, witness_family_size(*rule.alphabet(), std::max<std::size_t>(K, 1)), K};
  if (best) {
    AcyclicityWitness w;
    for (std::size_t i = 0; i < best->size(); ++i) {
      const auto& a = (*best)[i];
      const auto& b = (*best)[(i + 1) % best->size()];
      w.cycle.push_back(edges.at({a, b}));
    }
    report.failure = std::move(w);
  }
  return report;
}

std::optional<std::vector<BitWord>> revealed_configuration_order(const Rule& rule) {
  const auto graph = adjacency(revealed_configuration_relation(rule));
  std::map<BitWord, std::size_t> indegree;
  for (const auto& [u, outs] : graph) {
    indegree[u];
    for (const auto& v : outs) ++indegree[v];
  }
  std::set<BitWord> ready;
  for (const auto& [u, d] : indegree) {
    if (d == 0) ready.insert(u);
  }
  std::vector<BitWord> order;
  while (!ready.empty()) {
    const BitWord u = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(u);
    for (const auto& v : graph.at(u)) {
      if (--indegree[v] == 0) ready.insert(v);
    }
  }
  if (order.size() != graph.size()) return std::nullopt;
  return order;
}

std::vector<AxiomReport> run_suite(const Rule& rule, Suite suite) {
  std::vector<AxiomReport> out;
  const bool all = suite == Suite::All;
  if (all || suite == Suite::Csr) {
    out.push_back(check_monotonicity(rule));
    out.push_back(check_informational_dominance(rule));
  }
  if (all || suite == Suite::Osr) {
    out.push_back(check_replacement(rule));
    out.push_back(check_sequential_alpha(rule));
    out.push_back(check_snbc(rule));
  }
  if (all || suite == Suite::Config) {
    out.push_back(check_neutrality(rule));
    out.push_back(check_acyclicity(rule));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Replay

namespace {

bool replay_witness(const Rule& rule, const MonotonicityWitness& w) {
  using Kind = MonotonicityWitness::Kind;
  const Sequence expected_t = w.kind == Kind::Shift ? favorable_shift(w.original, w.position)
                                                    : favorable_deletion(w.original, w.position);
  const bool favorable = w.kind == Kind::Shift ? w.original.at(w.position + 1) == w.expected
                                               : w.original.at(w.position) != w.expected;
  return favorable && expected_t == w.transformed && rule.decide(w.original) == w.expected &&
         rule.decide(w.transformed) == w.observed && w.observed != w.expected;
}

bool replay_witness(const Rule& rule, const DominanceWitness& w) {
  if (!is_minimal_sufficient(rule, w.minimal, w.excluded)) return false;
  if (!rule.settled(w.sufficient.word()) || contains(w.sufficient.symbols(), w.excluded)) return false;
  if (w.truncation >= w.minimal.size()) return false;
  const Segment head = w.minimal.prefix(w.truncation) + w.sufficient;
  return prefix_of(w.combined, head.size()) == head && rule.decide(w.combined) == w.excluded;
}

bool replay_witness(const Rule& rule, const ReplacementWitness& w) {
  const DecisiveSet D = decisive_set(rule);
  const auto d = rule.settled(w.minimal.word());
  if (!d || !is_minimal_sufficient(rule, w.minimal, *d)) return false;
  if (!is_subset(w.minimal.symbols(), D.non_decisive) || !contains(D.non_decisive, w.replacement)) return false;
  Word expect = w.minimal.word();
  expect.at(w.position - 1) = w.replacement;
  return expect == w.replaced.word() && !rule.settled(w.replaced.word());
}

bool replay_witness(const Rule& rule, const AlphaWitness& w) {
  const DecisiveSet D = decisive_set(rule);
  return is_minimal_sufficient(rule, w.smaller, w.smaller_decision) &&
         is_minimal_sufficient(rule, w.larger, w.larger_decision) &&
         is_subset(w.smaller.symbols(), D.non_decisive) && is_subset(w.larger.symbols(), D.non_decisive) &&
         is_subset(w.smaller.symbols(), w.larger.symbols()) && contains(w.smaller.symbols(), w.larger_decision) &&
         w.smaller_decision != w.larger_decision;
}

bool replay_witness(const Rule& rule, const NbcWitness& w) {
  const DecisiveSet D = decisive_set(rule);
  auto ok = [&](const Segment& m, Symbol a, Symbol b, Decision d) {
    return is_minimal_sufficient(rule, m, d) && m.symbols() == (singleton(a) | singleton(b)) &&
           is_subset(m.symbols(), D.non_decisive);
  };
  return w.x != w.y && w.y != w.z && w.x != w.z && ok(w.xy, w.x, w.y, w.x) && ok(w.yz, w.y, w.z, w.y) &&
         ok(w.xz, w.x, w.z, w.z);
}

bool replay_witness(const Rule& rule, const NeutralityWitness& w) {
  return relabel(w.original, w.sigma) == w.relabeled && rule.decide(w.original) == w.original_decision &&
         rule.decide(w.relabeled) == w.relabeled_decision && w.relabeled_decision != w.sigma(w.original_decision);
}

bool replay_witness(const Rule& rule, const AcyclicityWitness& w) {
  if (w.cycle.empty()) return false;
  for (std::size_t i = 0; i < w.cycle.size(); ++i) {
    const auto& e = w.cycle[i];
    const auto& next = w.cycle[(i + 1) % w.cycle.size()];
    const std::size_t window = e.winner.length();
    if (e.loser != next.winner) return false;
    if (e.chosen == e.other || rule.decide(e.witness) != e.chosen) return false;
    if (config_encode(e.witness, e.chosen, window) != e.winner) return false;
    if (config_encode(e.witness, e.other, window) != e.loser || e.loser.bits() == 0) return false;
  }
  return true;
}

}  // namespace

bool replay(const Rule& rule, const AxiomReport& report) {
  if (!report.failure) return false;
  return std::visit([&](const auto& w) { return replay_witness(rule, w); }, *report.failure);
}

// ---------------------------------------------------------------------------
// Identification

CsrIdentification identify_csr(const Rule& rule) {
  require_choice_rule(rule);
  const auto& X = rule.alphabet();
  CsrSpec spec{X, {}, Rational(1)};
  for (Symbol x = 0; x < X->size(); ++x) {
    const Sequence constant = Sequence::constant(X, x);
    if (rule.decide(constant) != x) {
      throw NotCsr("constant sequence " + format_sequence(constant) + " does not choose " + X->name(x));
    }
    const std::size_t n = std::max<std::size_t>(stopping_time(rule, constant), 1);
    spec.weights.push_back(Rational(1, static_cast<std::int64_t>(n)));
  }
  const std::size_t length = std::max(family_length(rule), csr_uniform_bound(spec));
  const std::size_t n = witness_family_size(*X, length);
  for (std::size_t i = 0; i < n; ++i) {
    const Sequence s = witness_family_member(X, length, i);
    const Decision want = rule.decide(s);
    const Symbol got = csr_evaluate(spec, s).choice;
    if (got != want) {
      throw NotCsr("recovered CSR chooses " + X->name(got) + " on " + format_sequence(s) + " but the rule chooses " +
                   X->name(want));
    }
  }
  return {std::move(spec), n};
}

OsrIdentification identify_osr(const Rule& rule) {
  require_choice_rule(rule);
  const auto& X = rule.alphabet();
  const std::size_t k = X->size();
  const auto ms = enumerate_minimal_sufficient(rule);
  const DecisiveSet D = decisive_from(rule, ms);
  const std::size_t span = family_length(rule);

  // revealed preference among non-decisive alternatives
  std::vector<std::set<Symbol>> beats(k);
  for (const auto& m : restrict_to(ms, D.non_decisive)) {
    const SymbolSet present = m.segment.symbols();
    for (Symbol y = 0; y < k; ++y) {
      if (y != m.decision && contains(present, y)) beats[m.decision].insert(y);
    }
  }
  std::vector<std::size_t> indegree(k, 0);
  for (Symbol x = 0; x < k; ++x) {
    if (!contains(D.non_decisive, x)) continue;
    for (Symbol y : beats[x]) ++indegree[y];
  }
  std::set<Symbol> ready;
  for (Symbol x = 0; x < k; ++x) {
    if (contains(D.non_decisive, x) && indegree[x] == 0) ready.insert(x);
  }
  std::vector<Symbol> lower;
  while (!ready.empty()) {
    const Symbol x = *ready.begin();
    ready.erase(ready.begin());
    lower.push_back(x);
    for (Symbol y : beats[x]) {
      if (--indegree[y] == 0) ready.insert(y);
    }
  }
  if (lower.size() != static_cast<std::size_t>(std::popcount(D.non_decisive))) {
    throw NotOsr("revealed preference among non-decisive alternatives is cyclic");
  }

  OsrSpec spec{X, {}, 0, span};
  for (Symbol x = 0; x < k; ++x) {
    if (contains(D.decisive, x)) spec.order.push_back(x);
  }
  spec.order.insert(spec.order.end(), lower.begin(), lower.end());
  spec.threshold_alt = lower.empty() ? spec.order.back() : lower.front();
  spec.validate();

  const std::size_t n = witness_family_size(*X, span);
  for (std::size_t i = 0; i < n; ++i) {
    const Sequence s = witness_family_member(X, span, i);
    const Decision want = rule.decide(s);
    const Symbol got = osr_evaluate(spec, s);
    if (got != want) {
      throw NotOsr("recovered OSR chooses " + X->name(got) + " on " + format_sequence(s) + " but the rule chooses " +
                   X->name(want));
    }
  }
  return {std::move(spec), n};
}

}  // namespace seqdec
