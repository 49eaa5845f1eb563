#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lci/word.hpp"

namespace lci {

// Surjective map from block slots {1..l} onto the alphabet {1..m}.
class BlockOrder {
 public:
  BlockOrder(std::vector<Letter> slots, int alphabet_size);

  static BlockOrder identity(int alphabet_size);

  std::span<const Letter> slots() const noexcept { return slots_; }
  std::size_t size() const noexcept { return slots_.size(); }
  int alphabet_size() const noexcept { return m_; }
  Letter operator[](std::size_t k) const { return slots_[k]; }
  bool is_identity() const noexcept;

  friend bool operator==(const BlockOrder&, const BlockOrder&) = default;

 private:
  std::vector<Letter> slots_;
  int m_;
};

// Split of a word of length total() into consecutive, possibly empty segments.
struct Composition {
  std::vector<std::size_t> parts;

  std::size_t total() const noexcept;
};

// All compositions of n into k parts, in lexicographic order.
std::vector<Composition> enumerate_compositions(std::size_t n, std::size_t k);

// Length of a longest common weakly increasing subsequence. Words may have
// different lengths but must share the alphabet size. Uses a linear-time
// greedy scan for m = 2 and lci_length_dp otherwise.
std::size_t lci_length(const Word& x, const Word& y);

// O(|x||y|m) dynamic program with O(|y|m) memory.
std::size_t lci_length_dp(const Word& x, const Word& y);

// For m = 2: max over k of k + min(#2 after the k-th 1 in x, #2 after the
// k-th 1 in y). O(|x| + |y|).
std::size_t lci_length_binary(const Word& x, const Word& y);

// Exhaustive enumeration; |x|, |y| <= kBruteForceMaxLength.
inline constexpr std::size_t kBruteForceMaxLength = 12;
std::size_t lci_bruteforce(const Word& x, const Word& y);

// sum_i min(#i in x-segment i, #i in y-segment i); segment i of x covers
// positions (lx_1+...+lx_{i-1}, lx_1+...+lx_i].
std::size_t composition_value(const Word& x, const Word& y, const Composition& lx,
                              const Composition& ly);

// Longest common subsequence made of l consecutive (possibly empty) blocks,
// block k using only letter alpha(k).
std::size_t lc_blocks_length(const Word& x, const Word& y, const BlockOrder& alpha);

// Max of lc_blocks_length over all surjections {1..b} -> {1..m}; requires
// b >= m and m^b <= kMaxSurjectionSpace.
inline constexpr std::uint64_t kMaxSurjectionSpace = 1'000'000;
std::size_t lc_b_blocks(const Word& x, const Word& y, std::size_t b);

// Classic longest common subsequence.
std::size_t lcs_length(const Word& x, const Word& y);

}  // namespace lci
