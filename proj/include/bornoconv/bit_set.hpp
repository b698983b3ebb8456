#ifndef BORNOCONV_BIT_SET_HPP
#define BORNOCONV_BIT_SET_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace bornoconv {

/// Fixed-width set of small non-negative integers stored in one machine word.
/// `Tag` keeps point sets and index sets from mixing.
template <typename Word, typename Tag>
class BitSet {
 public:
  using word_type = Word;
  static constexpr int capacity = static_cast<int>(sizeof(Word) * 8);

  constexpr BitSet() = default;
  constexpr explicit BitSet(Word bits) : bits_(bits) {}
  constexpr BitSet(std::initializer_list<int> elements) {
    for (int e : elements) insert(e);
  }

  /// {0, ..., n-1}
  static constexpr BitSet full(int n) {
    return BitSet(n >= capacity ? ~Word{0} : static_cast<Word>((Word{1} << n) - 1));
  }
  static constexpr BitSet singleton(int e) { return BitSet(static_cast<Word>(Word{1} << e)); }

  constexpr Word bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr int size() const noexcept { return std::popcount(bits_); }
  constexpr bool contains(int e) const noexcept { return (bits_ >> e) & Word{1}; }
  constexpr void insert(int e) noexcept { bits_ |= static_cast<Word>(Word{1} << e); }
  constexpr void erase(int e) noexcept { bits_ &= static_cast<Word>(~(Word{1} << e)); }
  constexpr bool is_subset_of(BitSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(BitSet other) const noexcept { return (bits_ & other.bits_) != 0; }

  /// Complement relative to `universe`.
  constexpr BitSet complement_in(BitSet universe) const noexcept { return BitSet(universe.bits_ & ~bits_); }

  constexpr BitSet operator|(BitSet o) const noexcept { return BitSet(bits_ | o.bits_); }
  constexpr BitSet operator&(BitSet o) const noexcept { return BitSet(bits_ & o.bits_); }
  constexpr BitSet operator-(BitSet o) const noexcept { return BitSet(bits_ & ~o.bits_); }
  constexpr BitSet& operator|=(BitSet o) noexcept { bits_ |= o.bits_; return *this; }
  constexpr BitSet& operator&=(BitSet o) noexcept { bits_ &= o.bits_; return *this; }

  constexpr auto operator<=>(const BitSet&) const = default;

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (Word w = bits_; w != 0; w &= w - 1) out.push_back(std::countr_zero(w));
    return out;
  }

  /// Calls `f(element)` for every member in increasing order.
  template <typename F>
  constexpr void for_each(F&& f) const {
    for (Word w = bits_; w != 0; w &= w - 1) f(std::countr_zero(w));
  }

 private:
  Word bits_ = 0;
};

struct point_tag;
struct index_tag;

/// Subset of a finite metric space, by point index.
using PointSet = BitSet<std::uint64_t, point_tag>;
/// Subset of a finite directed set, by index position.
using IndexSet = BitSet<std::uint32_t, index_tag>;

/// Calls `f(subset)` for every nonempty subset of `set` (Gosper-free submask walk).
template <typename Set, typename F>
void for_each_nonempty_subset(Set set, F&& f) {
  using W = typename Set::word_type;
  const W full = set.bits();
  for (W sub = full; sub != 0; sub = static_cast<W>((sub - 1) & full)) f(Set(sub));
}

/// Calls `f(subset)` for every subset of `set`, including the empty one.
template <typename Set, typename F>
void for_each_subset(Set set, F&& f) {
  for_each_nonempty_subset(set, f);
  f(Set{});
}

}  // namespace bornoconv

#endif
