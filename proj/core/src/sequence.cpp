#include "seqdec/sequence.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "seqdec/errors.hpp"

namespace seqdec {

namespace {

void check_word(const Alphabet& alphabet, const Word& word) {
  for (Symbol s : word) {
    if (s >= alphabet.size()) {
      throw InvalidArgument("symbol index " + std::to_string(s) + " outside alphabet of size " +
                            std::to_string(alphabet.size()));
    }
  }
}

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word word;
  for (const auto& tok : split_ws(text)) word.push_back(alphabet.index(tok));
  return word;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : names_(std::move(symbols)) {
  if (names_.empty()) throw InvalidArgument("alphabet must be nonempty");
  if (names_.size() > kMaxAlphabet) {
    throw InvalidArgument("alphabet larger than " + std::to_string(kMaxAlphabet) + " symbols");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty() || n.find_first_of(" \t\n|") != std::string::npos) {
      throw InvalidArgument("invalid symbol name '" + n + "'");
    }
    if (!index_.emplace(n, static_cast<Symbol>(i)).second) {
      throw InvalidArgument("duplicate symbol '" + n + "'");
    }
  }
}

Symbol Alphabet::index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw InvalidArgument("unknown symbol '" + std::string(name) + "'");
  return it->second;
}

bool Alphabet::contains(std::string_view name) const {
  return index_.count(std::string(name)) != 0;
}

SymbolSet Alphabet::all() const {
  return size() == 64 ? ~SymbolSet{0} : (SymbolSet{1} << size()) - 1;
}

AlphabetPtr make_alphabet(std::vector<std::string> symbols) {
  return std::make_shared<const Alphabet>(std::move(symbols));
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && *a == *b);
}

// Segment

Segment::Segment(AlphabetPtr alphabet, Word word)
    : alphabet_(std::move(alphabet)), word_(std::move(word)) {
  if (!alphabet_) throw InvalidArgument("segment without alphabet");
  check_word(*alphabet_, word_);
}

Segment Segment::prefix(std::size_t k) const {
  if (k > word_.size()) throw InvalidArgument("prefix longer than segment");
  return Segment(alphabet_, Word(word_.begin(), word_.begin() + static_cast<std::ptrdiff_t>(k)));
}

Segment Segment::append(Symbol s) const {
  Word w = word_;
  w.push_back(s);
  return Segment(alphabet_, std::move(w));
}

Segment Segment::operator+(const Segment& tail) const {
  if (!same_alphabet(alphabet_, tail.alphabet_)) throw AlphabetMismatch();
  Word w = word_;
  w.insert(w.end(), tail.word_.begin(), tail.word_.end());
  return Segment(alphabet_, std::move(w));
}

std::size_t Segment::count(Symbol s) const {
  return static_cast<std::size_t>(std::count(word_.begin(), word_.end(), s));
}

SymbolSet Segment::symbols() const {
  SymbolSet set = 0;
  for (Symbol s : word_) set |= singleton(s);
  return set;
}

// Sequence

Sequence::Sequence(AlphabetPtr alphabet, Word prefix, Word cycle)
    : alphabet_(std::move(alphabet)), prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (!alphabet_) throw InvalidArgument("sequence without alphabet");
  if (cycle_.empty()) throw InvalidArgument("sequence cycle must be nonempty");
  check_word(*alphabet_, prefix_);
  check_word(*alphabet_, cycle_);
}

Sequence Sequence::constant(AlphabetPtr alphabet, Symbol s) {
  return Sequence(std::move(alphabet), {}, {s});
}

Symbol Sequence::at(std::size_t position) const {
  if (position == 0) throw InvalidArgument("sequence positions start at 1");
  if (position <= prefix_.size()) return prefix_[position - 1];
  return cycle_[(position - prefix_.size() - 1) % cycle_.size()];
}

Sequence Sequence::unrolled(std::size_t length) const {
  Word p = prefix_;
  Word c = cycle_;
  while (p.size() < length) {
    p.push_back(c.front());
    std::rotate(c.begin(), c.begin() + 1, c.end());
  }
  return Sequence(alphabet_, std::move(p), std::move(c));
}

bool operator==(const Sequence& a, const Sequence& b) {
  if (!same_alphabet(a.alphabet_, b.alphabet_)) return false;
  const std::size_t n =
      a.prefix_.size() + b.prefix_.size() + std::lcm(a.cycle_.size(), b.cycle_.size());
  for (std::size_t i = 1; i <= n; ++i) {
    if (a.at(i) != b.at(i)) return false;
  }
  return true;
}

// Relabeling

Relabeling::Relabeling(std::vector<Symbol> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (Symbol s : mapping_) {
    if (s >= mapping_.size() || seen[s]) throw InvalidArgument("relabeling is not a permutation");
    seen[s] = true;
  }
}

Relabeling Relabeling::identity(std::size_t n) {
  std::vector<Symbol> m(n);
  std::iota(m.begin(), m.end(), Symbol{0});
  return Relabeling(std::move(m));
}

Relabeling Relabeling::swap(std::size_t n, Symbol a, Symbol b) {
  auto m = identity(n).mapping_;
  std::swap(m.at(a), m.at(b));
  return Relabeling(std::move(m));
}

Relabeling Relabeling::inverse() const {
  std::vector<Symbol> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) inv[mapping_[i]] = static_cast<Symbol>(i);
  return Relabeling(std::move(inv));
}

std::vector<Relabeling> all_relabelings(std::size_t n) {
  std::vector<Relabeling> out;
  auto m = Relabeling::identity(n).mapping();
  do {
    out.emplace_back(m);
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

// Transformations

Segment prefix_of(const Sequence& seq, std::size_t k) {
  Word w(k);
  for (std::size_t i = 1; i <= k; ++i) w[i - 1] = seq.at(i);
  return Segment(seq.alphabet(), std::move(w));
}

Sequence concat(const Segment& head, const Sequence& tail) {
  if (!same_alphabet(head.alphabet(), tail.alphabet())) throw AlphabetMismatch();
  Word p = head.word();
  p.insert(p.end(), tail.prefix().begin(), tail.prefix().end());
  return Sequence(tail.alphabet(), std::move(p), tail.cycle());
}

Sequence favorable_shift(const Sequence& seq, std::size_t k) {
  if (k == 0) throw InvalidArgument("shift position must be >= 1");
  Sequence u = seq.unrolled(k + 1);
  Word p = u.prefix();
  std::swap(p[k - 1], p[k]);
  return Sequence(u.alphabet(), std::move(p), u.cycle());
}

Sequence favorable_deletion(const Sequence& seq, std::size_t k) {
  if (k == 0) throw InvalidArgument("deletion position must be >= 1");
  Sequence u = seq.unrolled(k);
  Word p = u.prefix();
  p.erase(p.begin() + static_cast<std::ptrdiff_t>(k - 1));
  return Sequence(u.alphabet(), std::move(p), u.cycle());
}

Sequence relabel(const Sequence& seq, const Relabeling& sigma) {
  if (sigma.size() != seq.alphabet()->size()) throw AlphabetMismatch("relabeling size mismatch");
  Word p = seq.prefix();
  Word c = seq.cycle();
  for (auto& s : p) s = sigma(s);
  for (auto& s : c) s = sigma(s);
  return Sequence(seq.alphabet(), std::move(p), std::move(c));
}

Segment relabel(const Segment& seg, const Relabeling& sigma) {
  if (sigma.size() != seg.alphabet()->size()) throw AlphabetMismatch("relabeling size mismatch");
  Word w = seg.word();
  for (auto& s : w) s = sigma(s);
  return Segment(seg.alphabet(), std::move(w));
}

// Enumeration

WordRange::iterator::iterator(std::size_t radix, std::size_t length)
    : radix_(radix), word_(length, 0), done_(radix == 0 && length > 0) {}

WordRange::iterator& WordRange::iterator::operator++() {
  // odometer: increment the last digit, carrying leftwards
  std::size_t i = word_.size();
  while (i > 0) {
    --i;
    if (++word_[i] < radix_) return *this;
    word_[i] = 0;
  }
  done_ = true;
  return *this;
}

std::size_t WordRange::count() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < length_; ++i) n *= radix_;
  return n;
}

WordRange enumerate_words(std::size_t radix, std::size_t length) { return {radix, length}; }

std::vector<Segment> enumerate_segments(const AlphabetPtr& alphabet, std::size_t length) {
  std::vector<Segment> out;
  for (const auto& w : enumerate_words(alphabet->size(), length)) out.emplace_back(alphabet, w);
  return out;
}

std::size_t word_rank(const Word& word, std::size_t radix) {
  std::size_t r = 0;
  for (Symbol s : word) r = r * radix + s;
  return r;
}

// Notation

Sequence parse_sequence(const AlphabetPtr& alphabet, std::string_view text) {
  auto bar = text.find('|');
  if (bar == std::string_view::npos) {
    throw InvalidArgument("sequence literal needs a '|' separating prefix and cycle: '" +
                          std::string(text) + "'");
  }
  if (text.find('|', bar + 1) != std::string_view::npos) {
    throw InvalidArgument("sequence literal has more than one '|'");
  }
  Word prefix = parse_word(*alphabet, text.substr(0, bar));
  Word cycle = parse_word(*alphabet, text.substr(bar + 1));
  if (cycle.empty()) throw InvalidArgument("sequence literal has an empty cycle");
  return Sequence(alphabet, std::move(prefix), std::move(cycle));
}

std::string format_word(const Alphabet& alphabet, const Word& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(word[i]);
  }
  return out;
}

std::string format_sequence(const Sequence& seq) {
  const auto& a = *seq.alphabet();
  return format_word(a, seq.prefix()) + "|" + format_word(a, seq.cycle());
}

Segment parse_segment(const AlphabetPtr& alphabet, std::string_view text) {
  return Segment(alphabet, parse_word(*alphabet, text));
}

std::string format_segment(const Segment& seg) { return format_word(*seg.alphabet(), seg.word()); }

}  // namespace seqdec
