#pragma once

// Alphabets, finite segments and eventually periodic infinite sequences.
//
// Positions are 1-based throughout, matching the way sequences are usually
// written: S(1) is the first alternative. Words are stored 0-based.

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace seqdec {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Bit set over symbol indices. Alphabets are capped at 64 symbols so this
/// fits in one machine word.
using SymbolSet = std::uint64_t;

inline constexpr std::size_t kMaxAlphabet = 64;

constexpr SymbolSet singleton(Symbol s) { return SymbolSet{1} << s; }
constexpr bool contains(SymbolSet set, Symbol s) { return (set >> s) & 1U; }
constexpr bool is_subset(SymbolSet a, SymbolSet b) { return (a & ~b) == 0; }

class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }

  /// Throws InvalidArgument for unknown names.
  Symbol index(std::string_view name) const;
  bool contains(std::string_view name) const;

  SymbolSet all() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> symbols);

/// Same object or same symbol list.
bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

/// A finite word over an alphabet. The empty segment is valid.
class Segment {
 public:
  Segment(AlphabetPtr alphabet, Word word = {});

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const Word& word() const { return word_; }
  std::size_t size() const { return word_.size(); }
  bool empty() const { return word_.empty(); }

  /// 1-based access.
  Symbol at(std::size_t position) const { return word_.at(position - 1); }

  Segment prefix(std::size_t k) const;
  Segment append(Symbol s) const;
  Segment operator+(const Segment& tail) const;

  /// Number of occurrences of `s`.
  std::size_t count(Symbol s) const;
  /// The set of symbols occurring in the word.
  SymbolSet symbols() const;

  friend bool operator==(const Segment& a, const Segment& b) {
    return a.word_ == b.word_ && same_alphabet(a.alphabet_, b.alphabet_);
  }

 private:
  AlphabetPtr alphabet_;
  Word word_;
};

/// An infinite sequence represented as prefix followed by a repeated,
/// nonempty cycle: S = p(1..|p|) c c c ...
class Sequence {
 public:
  Sequence(AlphabetPtr alphabet, Word prefix, Word cycle);

  /// The constant sequence (s s s ...).
  static Sequence constant(AlphabetPtr alphabet, Symbol s);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const Word& prefix() const { return prefix_; }
  const Word& cycle() const { return cycle_; }

  /// S(i) for i >= 1.
  Symbol at(std::size_t position) const;

  /// Same sequence with the cycle unrolled into the prefix until the prefix
  /// holds at least `length` symbols.
  Sequence unrolled(std::size_t length) const;

  /// Position-function equality, decided on the first
  /// |p| + |p'| + lcm(|c|, |c'|) positions.
  friend bool operator==(const Sequence& a, const Sequence& b);

 private:
  AlphabetPtr alphabet_;
  Word prefix_;
  Word cycle_;
};

/// A bijection on symbol indices.
class Relabeling {
 public:
  explicit Relabeling(std::vector<Symbol> mapping);
  static Relabeling identity(std::size_t n);
  /// Exchanges `a` and `b`, fixing everything else.
  static Relabeling swap(std::size_t n, Symbol a, Symbol b);

  Symbol operator()(Symbol s) const { return mapping_.at(s); }
  std::size_t size() const { return mapping_.size(); }
  const std::vector<Symbol>& mapping() const { return mapping_; }
  Relabeling inverse() const;

  friend bool operator==(const Relabeling&, const Relabeling&) = default;

 private:
  std::vector<Symbol> mapping_;
};

/// Every permutation of {0..n-1}, in lexicographic order.
std::vector<Relabeling> all_relabelings(std::size_t n);

Segment prefix_of(const Sequence& seq, std::size_t k);
Sequence concat(const Segment& head, const Sequence& tail);
/// Exchanges positions k and k+1.
Sequence favorable_shift(const Sequence& seq, std::size_t k);
/// Drops position k; later positions move one step forward.
Sequence favorable_deletion(const Sequence& seq, std::size_t k);
Sequence relabel(const Sequence& seq, const Relabeling& sigma);
Segment relabel(const Segment& seg, const Relabeling& sigma);

/// Enumerates all |X|^length words in lexicographic order of symbol index.
class WordRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Word;
    using difference_type = std::ptrdiff_t;
    using pointer = const Word*;
    using reference = const Word&;

    iterator() = default;
    iterator(std::size_t radix, std::size_t length);

    reference operator*() const { return word_; }
    pointer operator->() const { return &word_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

   private:
    std::size_t radix_ = 0;
    Word word_;
    bool done_ = true;
  };

  WordRange(std::size_t radix, std::size_t length) : radix_(radix), length_(length) {}
  iterator begin() const { return {radix_, length_}; }
  iterator end() const { return {}; }
  std::size_t count() const;

 private:
  std::size_t radix_;
  std::size_t length_;
};

WordRange enumerate_words(std::size_t radix, std::size_t length);

/// Segment-valued view over enumerate_words.
std::vector<Segment> enumerate_segments(const AlphabetPtr& alphabet, std::size_t length);

/// Base-|X| rank of a word (first symbol most significant); the position of
/// the word in enumerate_words order.
std::size_t word_rank(const Word& word, std::size_t radix);

// Textual notation: `a b|c` is (a b c c c ...), `|a b c` is the pure cycle.

Sequence parse_sequence(const AlphabetPtr& alphabet, std::string_view text);
std::string format_sequence(const Sequence& seq);
Segment parse_segment(const AlphabetPtr& alphabet, std::string_view text);
std::string format_segment(const Segment& seg);
std::string format_word(const Alphabet& alphabet, const Word& word);

}  // namespace seqdec
