#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lci/pmf.hpp"
#include "lci/rng.hpp"

namespace lci {

// Letters are 1-based, as in the alphabet {1..m}.
using Letter = int;

class Word {
 public:
  Word() = default;
  Word(std::vector<Letter> letters, int alphabet_size);

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  int alphabet_size() const noexcept { return m_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word appended(Letter letter) const;

  // Digit string for m <= 9 ("1122"), comma-separated otherwise ("1,10,3").
  std::string to_string() const;

  // Inverse of to_string(). A string with commas is always read as
  // comma-separated; otherwise each character is one letter.
  static Word parse(std::string_view text, int alphabet_size);

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
  int m_ = 0;
};

// n i.i.d. letters with law pmf. Deterministic given the RngConfig.
Word sample_word(const Pmf& pmf, std::size_t n, const RngConfig& rng);

}  // namespace lci
