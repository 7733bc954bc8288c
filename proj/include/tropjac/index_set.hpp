#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace tropjac {

/// Bitmask over a small index range (at most 64 indices). The tag keeps
/// vertex and edge subsets from being mixed up.
template <class Tag>
class IndexSet {
 public:
  static constexpr int kCapacity = 64;

  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}

  static IndexSet full(int n) {
    return IndexSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static IndexSet of(std::initializer_list<int> items) {
    IndexSet s;
    for (int i : items) s.insert(i);
    return s;
  }
  static IndexSet single(int i) { return IndexSet(std::uint64_t{1} << i); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }

  void insert(int i) { bits_ |= std::uint64_t{1} << i; }
  void erase(int i) { bits_ &= ~(std::uint64_t{1} << i); }

  bool is_subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }

  IndexSet operator|(IndexSet o) const { return IndexSet(bits_ | o.bits_); }
  IndexSet operator&(IndexSet o) const { return IndexSet(bits_ & o.bits_); }
  IndexSet operator-(IndexSet o) const { return IndexSet(bits_ & ~o.bits_); }
  IndexSet& operator|=(IndexSet o) { bits_ |= o.bits_; return *this; }
  IndexSet& operator&=(IndexSet o) { bits_ &= o.bits_; return *this; }

  /// Complement inside [0, n).
  IndexSet complement(int n) const { return full(n) - *this; }

  std::vector<int> items() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b));
  }

  friend constexpr bool operator==(IndexSet a, IndexSet b) = default;
  friend constexpr auto operator<=>(IndexSet a, IndexSet b) = default;

 private:
  std::uint64_t bits_ = 0;
};

struct VertexTag {};
struct EdgeTag {};

using VertexSet = IndexSet<VertexTag>;
using EdgeSet = IndexSet<EdgeTag>;

}  // namespace tropjac
