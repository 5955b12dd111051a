#include "seqdec/heuristics.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>
#include <stdexcept>

#include "seqdec/errors.hpp"

namespace seqdec {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("invalid integer '" + std::string(text) + "'");
  }
  return v;
}

void check_alphabet(const AlphabetPtr& expected, const Sequence& seq) {
  if (!same_alphabet(expected, seq.alphabet())) throw AlphabetMismatch();
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// ---------------------------------------------------------------------------
// CSR

void CsrSpec::validate() const {
  if (!alphabet) throw InvalidArgument("CSR without alphabet");
  if (weights.size() != alphabet->size()) throw InvalidArgument("CSR needs one weight per alternative");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= Rational(0)) {
      throw InvalidArgument("CSR weight of '" + alphabet->name(static_cast<Symbol>(i)) +
                            "' must be positive");
    }
  }
  if (threshold <= Rational(0)) throw InvalidArgument("CSR threshold must be positive");
}

CsrOutcome csr_evaluate(const CsrSpec& spec, const Sequence& seq) {
  check_alphabet(spec.alphabet, seq);
  const std::size_t bound = csr_uniform_bound(spec);
  std::vector<Rational> cumulative(spec.weights.size(), Rational(0));
  for (std::size_t i = 1; i <= bound; ++i) {
    const Symbol s = seq.at(i);
    cumulative[s] += spec.weights[s];
    if (cumulative[s] >= spec.threshold) {
      // only s moved at position i, so every other alternative is still below v
      for (std::size_t y = 0; y < cumulative.size(); ++y) {
        if (y != s && cumulative[y] >= spec.threshold) {
          throw std::logic_error("CSR crossing is not unique");
        }
      }
      return {s, i};
    }
  }
  throw std::logic_error("CSR did not stop within its uniform bound");
}

std::vector<std::size_t> csr_critical_counts(const CsrSpec& spec) {
  spec.validate();
  std::vector<std::size_t> n;
  n.reserve(spec.weights.size());
  for (const auto& w : spec.weights) {
    const Rational q = spec.threshold / w;
    n.push_back(static_cast<std::size_t>((q.numerator() + q.denominator() - 1) / q.denominator()));
  }
  return n;
}

std::size_t csr_uniform_bound(const CsrSpec& spec) {
  std::size_t k = 1;
  for (auto n : csr_critical_counts(spec)) k += n - 1;
  return k;
}

DecisionAutomaton csr_compile(const CsrSpec& spec) {
  const auto n = csr_critical_counts(spec);
  const auto& X = *spec.alphabet;
  const std::size_t k = X.size();

  std::vector<std::vector<std::size_t>> vectors;
  std::map<std::vector<std::size_t>, StateId> id;
  std::deque<std::vector<std::size_t>> queue{std::vector<std::size_t>(k, 0)};
  id[queue.front()] = 0;
  vectors.push_back(queue.front());
  while (!queue.empty()) {
    auto c = queue.front();
    queue.pop_front();
    for (Symbol s = 0; s < k; ++s) {
      if (c[s] + 1 == n[s]) continue;
      auto d = c;
      ++d[s];
      if (id.emplace(d, static_cast<StateId>(vectors.size())).second) {
        vectors.push_back(d);
        queue.push_back(d);
      }
    }
  }

  const std::size_t internal = vectors.size();
  std::vector<std::string> names;
  std::vector<std::optional<Decision>> outputs(internal + k);
  std::vector<StateId> delta((internal + k) * k);
  for (const auto& c : vectors) {
    std::string name;
    for (Symbol s = 0; s < k; ++s) {
      if (c[s] > 0) name += std::to_string(c[s]) + "_" + X.name(s);
    }
    names.push_back(name.empty() ? "q0" : name);
  }
  for (Symbol x = 0; x < k; ++x) {
    names.push_back(std::to_string(n[x]) + "_" + X.name(x));
    outputs[internal + x] = x;
    for (Symbol s = 0; s < k; ++s) delta[(internal + x) * k + s] = static_cast<StateId>(internal + x);
  }
  for (StateId q = 0; q < internal; ++q) {
    for (Symbol s = 0; s < k; ++s) {
      if (vectors[q][s] + 1 == n[s]) {
        delta[q * k + s] = static_cast<StateId>(internal + s);
      } else {
        auto d = vectors[q];
        ++d[s];
        delta[q * k + s] = id.at(d);
      }
    }
  }
  return DecisionAutomaton(spec.alphabet, spec.alphabet, std::move(names), 0, std::move(delta),
                           std::move(outputs));
}

// ---------------------------------------------------------------------------
// OSR

void OsrSpec::validate() const {
  if (!alphabet) throw InvalidArgument("OSR without alphabet");
  if (order.size() != alphabet->size()) throw InvalidArgument("OSR order must rank every alternative");
  std::vector<bool> seen(alphabet->size(), false);
  for (Symbol s : order) {
    if (s >= alphabet->size() || seen[s]) throw InvalidArgument("OSR order must rank each alternative once");
    seen[s] = true;
  }
  if (threshold_alt >= alphabet->size()) throw InvalidArgument("OSR threshold alternative not in alphabet");
  if (span == 0) throw InvalidArgument("OSR span must be >= 1");
}

std::size_t OsrSpec::rank(Symbol s) const {
  auto it = std::find(order.begin(), order.end(), s);
  if (it == order.end()) throw InvalidArgument("symbol not ranked");
  return static_cast<std::size_t>(it - order.begin());
}

Symbol osr_evaluate(const OsrSpec& spec, const Sequence& seq) {
  check_alphabet(spec.alphabet, seq);
  Symbol best = seq.at(1);
  for (std::size_t i = 1; i <= spec.span; ++i) {
    const Symbol s = seq.at(i);
    if (spec.above_threshold(s)) return s;
    if (spec.rank(s) < spec.rank(best)) best = s;
  }
  return best;
}

DecisionAutomaton osr_compile(const OsrSpec& spec) {
  spec.validate();
  const auto& X = *spec.alphabet;
  const std::size_t k = X.size();
  // state (p, best) for 1 <= p < span, plus the start state; then terminals
  auto state_of = [&](std::size_t p, Symbol best) -> StateId {
    return static_cast<StateId>(1 + (p - 1) * k + best);
  };
  const std::size_t internal = 1 + (spec.span - 1) * k;
  const std::size_t n = internal + k;
  auto terminal = [&](Symbol x) { return static_cast<StateId>(internal + x); };

  std::vector<std::string> names(n);
  std::vector<std::optional<Decision>> outputs(n);
  std::vector<StateId> delta(n * k);
  names[0] = "q0";
  for (std::size_t p = 1; p < spec.span; ++p) {
    for (Symbol b = 0; b < k; ++b) names[state_of(p, b)] = std::to_string(p) + ":" + X.name(b);
  }
  for (Symbol x = 0; x < k; ++x) {
    names[terminal(x)] = "choose:" + X.name(x);
    outputs[terminal(x)] = x;
    for (Symbol s = 0; s < k; ++s) delta[terminal(x) * k + s] = terminal(x);
  }
  auto step = [&](std::size_t p, std::optional<Symbol> best, Symbol s) -> StateId {
    if (spec.above_threshold(s)) return terminal(s);
    const Symbol nb = (!best || spec.rank(s) < spec.rank(*best)) ? s : *best;
    return p + 1 == spec.span ? terminal(nb) : state_of(p + 1, nb);
  };
  for (Symbol s = 0; s < k; ++s) delta[s] = step(0, std::nullopt, s);
  for (std::size_t p = 1; p < spec.span; ++p) {
    for (Symbol b = 0; b < k; ++b) {
      for (Symbol s = 0; s < k; ++s) delta[state_of(p, b) * k + s] = step(p, b, s);
    }
  }
  return DecisionAutomaton(spec.alphabet, spec.alphabet, std::move(names), 0, std::move(delta),
                           std::move(outputs));
}

// ---------------------------------------------------------------------------
// Configurations

BitWord::BitWord(std::size_t length, std::uint32_t bits) : length_(length), bits_(bits) {
  if (length > kMaxWindow) throw InvalidArgument("bit word longer than " + std::to_string(kMaxWindow));
  if (length < 32 && (bits >> length) != 0) throw InvalidArgument("bit word has bits beyond its length");
}

BitWord BitWord::parse(std::string_view text) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= std::uint32_t{1} << i;
    } else if (text[i] != '0') {
      throw InvalidArgument("bit word must be 0/1 characters: '" + std::string(text) + "'");
    }
  }
  return BitWord(text.size(), bits);
}

std::string BitWord::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 1; i <= length_; ++i) {
    if (at(i)) s[i - 1] = '1';
  }
  return s;
}

BitWord config_encode(const Sequence& seq, Symbol x, std::size_t window) {
  if (window == 0) throw InvalidArgument("configuration window must be >= 1");
  std::uint32_t bits = 0;
  for (std::size_t i = 1; i <= window; ++i) {
    if (seq.at(i) == x) bits |= std::uint32_t{1} << (i - 1);
  }
  return BitWord(window, bits);
}

BitstreamCollection::BitstreamCollection(std::map<Symbol, BitWord> streams) : streams_(std::move(streams)) {
  std::optional<std::size_t> length;
  for (const auto& [x, w] : streams_) {
    if (length && *length != w.length()) throw InvalidArgument("bitstreams differ in length");
    length = w.length();
  }
}

bool BitstreamCollection::feasible() const {
  if (streams_.empty()) return false;
  const std::size_t length = streams_.begin()->second.length();
  for (std::size_t i = 1; i <= length; ++i) {
    int ones = 0;
    for (const auto& [x, w] : streams_) ones += w.at(i) ? 1 : 0;
    if (ones != 1) return false;
  }
  return true;
}

BitstreamCollection config_collection(const Sequence& seq, std::size_t window) {
  std::map<Symbol, BitWord> streams;
  for (std::size_t i = 1; i <= window; ++i) {
    const Symbol x = seq.at(i);
    if (!streams.count(x)) streams.emplace(x, config_encode(seq, x, window));
  }
  return BitstreamCollection(std::move(streams));
}

void ConfigRuleSpec::validate() const {
  if (!alphabet) throw InvalidArgument("configuration rule without alphabet");
  if (window == 0 || window > kMaxWindow) {
    throw InvalidArgument("configuration window must be in 1.." + std::to_string(kMaxWindow));
  }
  if (rank.size() != (std::size_t{1} << window)) {
    throw InvalidArgument("comparator must rank all 2^window words");
  }
  std::set<std::uint64_t> distinct(rank.begin(), rank.end());
  if (distinct.size() != rank.size()) throw InvalidArgument("comparator ranks are not injective");
}

ConfigRuleSpec make_config_rule(AlphabetPtr alphabet, std::size_t window, ComparatorKind builtin) {
  if (window == 0 || window > kMaxWindow) {
    throw InvalidArgument("configuration window must be in 1.." + std::to_string(kMaxWindow));
  }
  ConfigRuleSpec spec{std::move(alphabet), window, builtin, {}};
  const std::size_t words = std::size_t{1} << window;
  spec.rank.resize(words);
  for (std::uint64_t bits = 0; bits < words; ++bits) {
    switch (builtin) {
      case ComparatorKind::NumericValue:
        spec.rank[bits] = bits;
        break;
      case ComparatorKind::FirstPositionPriority:
        spec.rank[bits] = ((bits & 1U) << window) | bits;
        break;
      case ComparatorKind::Table:
        throw InvalidArgument("table comparators need an explicit table");
    }
  }
  spec.validate();
  return spec;
}

ConfigRuleSpec make_config_rule(AlphabetPtr alphabet, std::size_t window,
                                const std::map<BitWord, std::uint64_t>& table) {
  ConfigRuleSpec spec{std::move(alphabet), window, ComparatorKind::Table, {}};
  if (window == 0 || window > kMaxWindow) {
    throw InvalidArgument("configuration window must be in 1.." + std::to_string(kMaxWindow));
  }
  const std::size_t words = std::size_t{1} << window;
  if (table.size() != words) throw InvalidArgument("comparator table must rank all 2^window words");
  spec.rank.assign(words, 0);
  for (const auto& [w, r] : table) {
    if (w.length() != window) throw InvalidArgument("comparator word '" + w.to_string() + "' has wrong length");
    spec.rank[w.bits()] = r;
  }
  spec.validate();
  return spec;
}

namespace {

Symbol config_decide(const ConfigRuleSpec& spec, const Sequence& seq) {
  const auto collection = config_collection(seq, spec.window);
  const auto& streams = collection.streams();
  auto best = streams.begin();
  for (auto it = streams.begin(); it != streams.end(); ++it) {
    if (spec.rank_of(it->second) > spec.rank_of(best->second)) best = it;
  }
  return best->first;
}

}  // namespace

Symbol config_evaluate(const ConfigRuleSpec& spec, const Sequence& seq) {
  check_alphabet(spec.alphabet, seq);
  return config_decide(spec, seq);
}

DecisionAutomaton config_compile(const ConfigRuleSpec& spec) {
  spec.validate();
  return from_prefix_function(spec.alphabet, spec.alphabet, spec.window, [&](const Word& w) {
    return static_cast<Decision>(config_decide(spec, Sequence(spec.alphabet, w, {w.back()})));
  });
}

}  // namespace seqdec
