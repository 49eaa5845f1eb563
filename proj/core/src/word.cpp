#include "lci/word.hpp"

#include <algorithm>
#include <charconv>

#include "lci/errors.hpp"

namespace lci {

Word::Word(std::vector<Letter> letters, int alphabet_size)
    : letters_(std::move(letters)), m_(alphabet_size) {
  if (m_ < 1) throw Error(ErrorKind::BadInput, "alphabet size must be positive");
  for (Letter c : letters_) {
    if (c < 1 || c > m_) {
      throw Error(ErrorKind::BadLetter,
                  "letter " + std::to_string(c) + " outside 1.." + std::to_string(m_));
    }
  }
}

Word Word::appended(Letter letter) const {
  auto letters = letters_;
  letters.push_back(letter);
  return Word(std::move(letters), m_);
}

std::string Word::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (m_ > 9) {
      if (i > 0) out += ',';
      out += std::to_string(letters_[i]);
    } else {
      out += static_cast<char>('0' + letters_[i]);
    }
  }
  return out;
}

Word Word::parse(std::string_view text, int alphabet_size) {
  std::vector<Letter> letters;
  if (text.find(',') != std::string_view::npos) {
    while (!text.empty()) {
      const auto comma = text.find(',');
      const auto token = text.substr(0, comma);
      Letter value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw Error(ErrorKind::BadLetter, "bad letter '" + std::string(token) + "'");
      }
      letters.push_back(value);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
  } else {
    for (char ch : text) {
      if (ch < '0' || ch > '9') {
        throw Error(ErrorKind::BadLetter, std::string("bad letter '") + ch + "'");
      }
      letters.push_back(ch - '0');
    }
  }
  return Word(std::move(letters), alphabet_size);
}

Word sample_word(const Pmf& pmf, std::size_t n, const RngConfig& rng) {
  const auto probs = pmf.as_doubles();
  std::vector<double> cumulative(probs.size());
  double running = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    running += probs[i];
    cumulative[i] = running;
  }
  CounterRng gen(rng);
  std::vector<Letter> letters(n);
  const auto last = static_cast<std::ptrdiff_t>(cumulative.size()) - 1;
  for (auto& letter : letters) {
    // Scale by the float total so an inexact pmf never falls off the end.
    const double u = gen.uniform() * running;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    letter = static_cast<Letter>(std::min<std::ptrdiff_t>(it - cumulative.begin(), last)) + 1;
  }
  return Word(std::move(letters), static_cast<int>(pmf.size()));
}

}  // namespace lci
