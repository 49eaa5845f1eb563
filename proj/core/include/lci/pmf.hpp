#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "lci/rational.hpp"

namespace lci {

// Probability mass function over the ordered alphabet {1..m}, m >= 2, with
// strictly positive entries.
//
// Entries are always held as exact rationals. A pmf built from doubles keeps
// the exact binary value of each double and is flagged inexact: its sum is
// only required to be within Tolerances::pmf_sum of one.
class Pmf {
 public:
  const std::vector<Rational>& probs() const noexcept { return probs_; }
  std::vector<double> as_doubles() const;
  std::size_t size() const noexcept { return probs_.size(); }
  const Rational& operator[](std::size_t i) const { return probs_[i]; }
  bool exact() const noexcept { return exact_; }

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  friend Pmf validate_pmf(std::vector<Rational> probs);
  friend Pmf validate_pmf(std::span<const double> probs);
  friend Pmf validate_pmf(const Pmf& pmf);

  Pmf(std::vector<Rational> probs, bool exact) : probs_(std::move(probs)), exact_(exact) {}

  std::vector<Rational> probs_;
  bool exact_ = true;
};

// Exact mode: the entries must sum to exactly one.
Pmf validate_pmf(std::vector<Rational> probs);
// Float mode: the sum may deviate from one by Tolerances::pmf_sum.
Pmf validate_pmf(std::span<const double> probs);
// Re-validation; returns an equal Pmf.
Pmf validate_pmf(const Pmf& pmf);

class Instance {
 public:
  Instance(Pmf px, Pmf py);

  const Pmf& px() const noexcept { return px_; }
  const Pmf& py() const noexcept { return py_; }
  std::size_t m() const noexcept { return px_.size(); }
  bool exact() const noexcept { return px_.exact() && py_.exact(); }

  // The same instance with the roles of the two words exchanged.
  Instance swapped() const { return Instance(py_, px_); }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Pmf px_;
  Pmf py_;
};

// {"pX": [...], "pY": [...]}; entries may be JSON numbers (float mode) or
// strings such as "3/8" or "0.375" (exact). A pmf is exact only when every
// entry is a string.
Pmf pmf_from_json(const nlohmann::json& entries);
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Pmf& pmf);
nlohmann::json to_json(const Instance& instance);

// Uniform pmf over m letters (exact).
Pmf uniform_pmf(std::size_t m);

}  // namespace lci
