#include "lci/exact_lci.hpp"

#include <algorithm>
#include <unordered_set>

#include "lci/errors.hpp"

namespace lci {
namespace {

void require_same_alphabet(const Word& x, const Word& y) {
  if (x.alphabet_size() != y.alphabet_size()) {
    throw Error(ErrorKind::AlphabetMismatch,
                "words over alphabets of size " + std::to_string(x.alphabet_size()) + " and " +
                    std::to_string(y.alphabet_size()));
  }
}

// Positions (1-based) of each occurrence of `letter`, and suffix counts of
// `other`: suffix[p] = #other in positions p+1..n.
struct BinaryScan {
  std::vector<std::size_t> ones;
  std::vector<std::size_t> twos_after;
};

BinaryScan scan_binary(const Word& w) {
  BinaryScan s;
  s.twos_after.assign(w.size() + 1, 0);
  for (std::size_t p = w.size(); p > 0; --p) {
    s.twos_after[p - 1] = s.twos_after[p] + (w[p - 1] == 2 ? 1 : 0);
  }
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (w[p] == 1) s.ones.push_back(p + 1);
  }
  return s;
}

void collect_increasing_subsequences(const Word& w, std::unordered_set<std::string>& out) {
  const std::size_t n = w.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::string seq;
    bool increasing = true;
    for (std::size_t i = 0; i < n && increasing; ++i) {
      if (mask & (1u << i)) {
        const char c = static_cast<char>(w[i]);
        if (!seq.empty() && seq.back() > c) increasing = false;
        seq.push_back(c);
      }
    }
    if (increasing) out.insert(std::move(seq));
  }
}

std::size_t blocks_dp(const Word& x, const Word& y, std::span<const Letter> slots) {
  const std::size_t l = slots.size();
  const std::size_t ny = y.size();
  // row[j][k]: best over x[1..i], y[1..j], blocks 1..k (k = 0 means none).
  std::vector<std::size_t> prev((ny + 1) * (l + 1), 0), cur((ny + 1) * (l + 1), 0);
  auto at = [l](std::vector<std::size_t>& v, std::size_t j, std::size_t k) -> std::size_t& {
    return v[j * (l + 1) + k];
  };
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const Letter xi = x[i - 1];
    for (std::size_t j = 0; j <= ny; ++j) at(cur, j, 0) = 0;
    for (std::size_t k = 1; k <= l; ++k) at(cur, 0, k) = 0;
    for (std::size_t j = 1; j <= ny; ++j) {
      const bool match = xi == y[j - 1];
      for (std::size_t k = 1; k <= l; ++k) {
        std::size_t best = std::max({at(prev, j, k), at(cur, j - 1, k), at(cur, j, k - 1)});
        if (match && xi == slots[k - 1]) best = std::max(best, at(prev, j - 1, k) + 1);
        at(cur, j, k) = best;
      }
    }
    std::swap(prev, cur);
  }
  return at(prev, ny, l);
}

}  // namespace

BlockOrder::BlockOrder(std::vector<Letter> slots, int alphabet_size)
    : slots_(std::move(slots)), m_(alphabet_size) {
  std::vector<bool> seen(static_cast<std::size_t>(std::max(m_, 0)) + 1, false);
  for (Letter c : slots_) {
    if (c < 1 || c > m_) {
      throw Error(ErrorKind::BadLetter, "block letter " + std::to_string(c) + " outside 1.." +
                                            std::to_string(m_));
    }
    seen[static_cast<std::size_t>(c)] = true;
  }
  for (int c = 1; c <= m_; ++c) {
    if (!seen[static_cast<std::size_t>(c)]) {
      throw Error(ErrorKind::NotOnto, "letter " + std::to_string(c) + " has no block");
    }
  }
}

BlockOrder BlockOrder::identity(int alphabet_size) {
  std::vector<Letter> slots(static_cast<std::size_t>(alphabet_size));
  for (int c = 1; c <= alphabet_size; ++c) slots[static_cast<std::size_t>(c - 1)] = c;
  return BlockOrder(std::move(slots), alphabet_size);
}

bool BlockOrder::is_identity() const noexcept {
  if (slots_.size() != static_cast<std::size_t>(m_)) return false;
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    if (slots_[k] != static_cast<Letter>(k + 1)) return false;
  }
  return true;
}

std::size_t Composition::total() const noexcept {
  std::size_t sum = 0;
  for (auto p : parts) sum += p;
  return sum;
}

std::vector<Composition> enumerate_compositions(std::size_t n, std::size_t k) {
  std::vector<Composition> out;
  if (k == 0) {
    if (n == 0) out.push_back(Composition{});
    return out;
  }
  std::vector<std::size_t> parts(k, 0);
  // Recursive fill of the first k-1 parts; the last takes the remainder.
  auto fill = [&](auto&& self, std::size_t idx, std::size_t remaining) -> void {
    if (idx + 1 == k) {
      parts[idx] = remaining;
      out.push_back(Composition{parts});
      return;
    }
    for (std::size_t v = 0; v <= remaining; ++v) {
      parts[idx] = v;
      self(self, idx + 1, remaining - v);
    }
  };
  fill(fill, 0, n);
  return out;
}

std::size_t lci_length(const Word& x, const Word& y) {
  require_same_alphabet(x, y);
  if (x.alphabet_size() == 2) return lci_length_binary(x, y);
  return lci_length_dp(x, y);
}

std::size_t lci_length_dp(const Word& x, const Word& y) {
  require_same_alphabet(x, y);
  return blocks_dp(x, y, BlockOrder::identity(x.alphabet_size()).slots());
}

std::size_t lci_length_binary(const Word& x, const Word& y) {
  require_same_alphabet(x, y);
  if (x.alphabet_size() != 2) {
    throw Error(ErrorKind::AlphabetMismatch, "binary scan needs m = 2");
  }
  const BinaryScan sx = scan_binary(x);
  const BinaryScan sy = scan_binary(y);
  const std::size_t max_ones = std::min(sx.ones.size(), sy.ones.size());
  std::size_t best = std::min(sx.twos_after[0], sy.twos_after[0]);
  for (std::size_t k = 1; k <= max_ones; ++k) {
    const std::size_t tail = std::min(sx.twos_after[sx.ones[k - 1]], sy.twos_after[sy.ones[k - 1]]);
    best = std::max(best, k + tail);
  }
  return best;
}

std::size_t lci_bruteforce(const Word& x, const Word& y) {
  require_same_alphabet(x, y);
  if (x.size() > kBruteForceMaxLength || y.size() > kBruteForceMaxLength) {
    throw Error(ErrorKind::TooLarge, "brute force limited to length " +
                                         std::to_string(kBruteForceMaxLength));
  }
  std::unordered_set<std::string> from_x, from_y;
  collect_increasing_subsequences(x, from_x);
  collect_increasing_subsequences(y, from_y);
  std::size_t best = 0;
  for (const auto& s : from_x) {
    if (s.size() > best && from_y.contains(s)) best = s.size();
  }
  return best;
}

std::size_t composition_value(const Word& x, const Word& y, const Composition& lx,
                              const Composition& ly) {
  require_same_alphabet(x, y);
  const auto m = static_cast<std::size_t>(x.alphabet_size());
  if (lx.parts.size() != m || ly.parts.size() != m || lx.total() != x.size() ||
      ly.total() != y.size()) {
    throw Error(ErrorKind::BadComposition, "compositions must have m parts summing to the word lengths");
  }
  std::size_t value = 0, px = 0, py = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto letter = static_cast<Letter>(i + 1);
    std::size_t cx = 0, cy = 0;
    for (std::size_t p = px; p < px + lx.parts[i]; ++p) cx += x[p] == letter;
    for (std::size_t p = py; p < py + ly.parts[i]; ++p) cy += y[p] == letter;
    value += std::min(cx, cy);
    px += lx.parts[i];
    py += ly.parts[i];
  }
  return value;
}

std::size_t lc_blocks_length(const Word& x, const Word& y, const BlockOrder& alpha) {
  require_same_alphabet(x, y);
  if (alpha.alphabet_size() != x.alphabet_size()) {
    throw Error(ErrorKind::AlphabetMismatch, "block order over a different alphabet");
  }
  return blocks_dp(x, y, alpha.slots());
}

std::size_t lc_b_blocks(const Word& x, const Word& y, std::size_t b) {
  require_same_alphabet(x, y);
  const auto m = static_cast<std::size_t>(x.alphabet_size());
  if (b < m) {
    throw Error(ErrorKind::NotOnto, "need at least m blocks for a surjection");
  }
  std::uint64_t space = 1;
  for (std::size_t k = 0; k < b; ++k) {
    space *= m;
    if (space > kMaxSurjectionSpace) {
      throw Error(ErrorKind::TooManyBlocks, "m^b exceeds " + std::to_string(kMaxSurjectionSpace));
    }
  }
  std::vector<Letter> slots(b, 1);
  std::vector<std::size_t> uses(m + 1, 0);
  std::size_t missing = m;
  std::size_t best = 0;
  auto generate = [&](auto&& self, std::size_t idx) -> void {
    if (missing > b - idx) return;  // cannot become onto any more
    if (idx == b) {
      best = std::max(best, blocks_dp(x, y, slots));
      return;
    }
    for (std::size_t c = 1; c <= m; ++c) {
      slots[idx] = static_cast<Letter>(c);
      if (uses[c]++ == 0) --missing;
      self(self, idx + 1);
      if (--uses[c] == 0) ++missing;
    }
  };
  generate(generate, 0);
  return best;
}

std::size_t lcs_length(const Word& x, const Word& y) {
  const std::size_t ny = y.size();
  std::vector<std::size_t> prev(ny + 1, 0), cur(ny + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= ny; ++j) {
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[ny];
}

}  // namespace lci
