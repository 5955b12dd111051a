#pragma once

// Parameterised choice heuristics: cardinal satisficing, ordinal satisficing
// and rational configuration-dependent rules. Each family has a direct
// evaluator and a compiler to DecisionAutomaton.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "seqdec/automaton.hpp"
#include "seqdec/sequence.hpp"

namespace seqdec {

using Rational = boost::rational<std::int64_t>;

/// Accepts "p/q" or an integer string.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

// ---------------------------------------------------------------------------
// Cardinal satisficing: choose the first alternative whose cumulative weight
// count * w(x) reaches the threshold v.

struct CsrSpec {
  AlphabetPtr alphabet;
  std::vector<Rational> weights;  // indexed by symbol
  Rational threshold;

  /// Throws InvalidArgument unless every weight and the threshold are > 0.
  void validate() const;
};

struct CsrOutcome {
  Symbol choice;
  std::size_t stop_position;
};

CsrOutcome csr_evaluate(const CsrSpec& spec, const Sequence& seq);

/// n_x = ceil(v / w(x)), the occurrence count at which x crosses v.
std::vector<std::size_t> csr_critical_counts(const CsrSpec& spec);

/// 1 + sum over x of (n_x - 1).
std::size_t csr_uniform_bound(const CsrSpec& spec);

/// States are occurrence-count vectors below the critical counts plus one
/// absorbing terminal per alternative. Names follow the "1_x1_y" convention.
DecisionAutomaton csr_compile(const CsrSpec& spec);

// ---------------------------------------------------------------------------
// Ordinal satisficing: within the first `span` positions choose the first
// alternative strictly preferred to the threshold alternative, otherwise the
// most preferred alternative seen.

struct OsrSpec {
  AlphabetPtr alphabet;
  std::vector<Symbol> order;  // best first
  Symbol threshold_alt;
  std::size_t span;

  void validate() const;
  /// Position of s in `order`; smaller is better.
  std::size_t rank(Symbol s) const;
  bool above_threshold(Symbol s) const { return rank(s) < rank(threshold_alt); }
};

Symbol osr_evaluate(const OsrSpec& spec, const Sequence& seq);
DecisionAutomaton osr_compile(const OsrSpec& spec);

// ---------------------------------------------------------------------------
// Configurations. The configuration of x in S is the indicator bitstream of
// the positions holding x, here cut to a finite window.

class BitWord {
 public:
  BitWord(std::size_t length, std::uint32_t bits);
  /// Parses "101": position 1 first.
  static BitWord parse(std::string_view text);

  std::size_t length() const { return length_; }
  /// Bit i-1 holds position i.
  std::uint32_t bits() const { return bits_; }
  bool at(std::size_t position) const { return (bits_ >> (position - 1)) & 1U; }
  std::string to_string() const;

  friend bool operator==(const BitWord&, const BitWord&) = default;
  friend auto operator<=>(const BitWord&, const BitWord&) = default;

 private:
  std::size_t length_;
  std::uint32_t bits_;
};

inline constexpr std::size_t kMaxWindow = 20;

BitWord config_encode(const Sequence& seq, Symbol x, std::size_t window);

/// Bitstreams cut to a common window, keyed by alternative.
class BitstreamCollection {
 public:
  explicit BitstreamCollection(std::map<Symbol, BitWord> streams);
  const std::map<Symbol, BitWord>& streams() const { return streams_; }
  /// Exactly one stream carries a 1 at every position of the window.
  bool feasible() const;

 private:
  std::map<Symbol, BitWord> streams_;
};

/// B(S) on the window: one stream per alternative occurring in it.
BitstreamCollection config_collection(const Sequence& seq, std::size_t window);

enum class ComparatorKind { Table, FirstPositionPriority, NumericValue };

struct ConfigRuleSpec {
  AlphabetPtr alphabet;
  std::size_t window;
  ComparatorKind kind = ComparatorKind::Table;
  /// rank[bits] for every word of length `window`; larger wins. Injective.
  std::vector<std::uint64_t> rank;

  void validate() const;
  std::uint64_t rank_of(const BitWord& w) const { return rank.at(w.bits()); }
};

/// numeric-value ranks a word by sum of 2^(i-1) over its set positions;
/// first-position-priority puts every word with position 1 set above the rest
/// and orders within each class by numeric value.
ConfigRuleSpec make_config_rule(AlphabetPtr alphabet, std::size_t window, ComparatorKind builtin);
ConfigRuleSpec make_config_rule(AlphabetPtr alphabet, std::size_t window,
                                const std::map<BitWord, std::uint64_t>& table);

Symbol config_evaluate(const ConfigRuleSpec& spec, const Sequence& seq);
/// Prefix-tree automaton of depth `window`.
DecisionAutomaton config_compile(const ConfigRuleSpec& spec);

}  // namespace seqdec
