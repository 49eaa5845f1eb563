#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "lci/exact_lci.hpp"
#include "lci/pmf.hpp"
#include "lci/rational.hpp"

namespace lci {

enum class LimitCase { CaseA, CaseASymmetric, CaseB1, CaseB2 };

std::string_view to_string(LimitCase c);
LimitCase limit_case_from_string(std::string_view text);

enum class Side { X, Y };

// Case a: the first active slot whose weight on the non-limiting side exceeds
// the limiting side's maximum.
struct CaseAConstants {
  int i1 = 0;
};

struct CaseB1Constants {
  Rational s_x, t_x, s_y, t_y;
};

struct CaseB2Constants {
  Rational s, t;
};

using CaseConstants = std::variant<CaseAConstants, CaseB1Constants, CaseB2Constants>;

// Everything deterministic about the limit. The analysis runs on one positive
// weight per slot and side. For a plain instance the slots are the letters;
// for a block order slot k carries the weights of letter slot_letter[k].
// Slot and letter numbers are 1-based.
struct AnalysisReport {
  std::vector<Rational> px;
  std::vector<Rational> py;
  std::vector<Letter> slot_letter;
  int alphabet_size = 0;
  bool exact = true;

  Rational e1;
  std::optional<Rational> e2;
  Rational e_max;

  std::vector<int> active;
  LimitCase limit_case = LimitCase::CaseB1;
  // Set when e1-achievers exist in both directions (the report then uses CaseA).
  bool both_directions = false;

  std::vector<Rational> anchor_x;
  std::vector<Rational> anchor_y;
  CaseConstants constants;

  std::size_t slots() const noexcept { return px.size(); }
  std::vector<bool> active_mask() const;
  bool is_case_a() const noexcept {
    return limit_case == LimitCase::CaseA || limit_case == LimitCase::CaseASymmetric;
  }
  // The word that limits the common length in Case a (X for CaseA).
  Side limiting_side() const;
};

struct EmaxResult {
  Rational e1;
  std::optional<Rational> e2;
  Rational e_max;
};

// e(i,j) for an admissible pair: p^X_i < p^X_j, p^Y_i > p^Y_j,
// p^X_i < p^Y_i and p^Y_j < p^X_j. Throws InadmissiblePair otherwise.
Rational pair_score(const Instance& inst, Letter i, Letter j);
bool pair_admissible(const std::vector<Rational>& px, const std::vector<Rational>& py,
                     std::size_t i, std::size_t j);

EmaxResult compute_emax(const Instance& inst);
EmaxResult compute_emax(const std::vector<Rational>& px, const std::vector<Rational>& py);

// f(lx, ly) = sum_i min(p^X_i lx_i, p^Y_i ly_i).
Rational f_value(const std::vector<Rational>& px, const std::vector<Rational>& py,
                 const std::vector<Rational>& lx, const std::vector<Rational>& ly);

// Max of f over all pairs of points of the simplex with step 1/r. Throws
// GridTooLarge when the number of pairs exceeds kMaxOracleGrid.
inline constexpr std::size_t kMaxOracleGrid = 10'000'000;
double emax_grid_oracle(const Instance& inst, int r);

struct ActiveSet {
  std::vector<int> letters;
  // witnesses[k]: a maximizer of u_{letters[k]} over U with sum(u) = e_max.
  std::vector<std::vector<Rational>> witnesses;
};

// One exact LP per slot: slot i is active when u_i can be positive on the
// face {u in U : sum(u) = e_max}, where U = {u >= 0 : sum u/p^X <= 1,
// sum u/p^Y <= 1}.
ActiveSet compute_I(const std::vector<Rational>& px, const std::vector<Rational>& py,
                    const Rational& e_max);

AnalysisReport classify_case(const Instance& inst);

// Analysis over weights that need not sum to one (block slots).
AnalysisReport analyze_weights(std::vector<Rational> px, std::vector<Rational> py,
                               std::vector<Letter> slot_letter, int alphabet_size,
                               bool exact);

// Report for the block order alpha. Verifies e_max^alpha == e_max and that the
// active slots are exactly alpha^{-1}(I); throws InvariantViolation otherwise.
AnalysisReport blocks_analysis(const Instance& inst, const BlockOrder& alpha);

// Returns the list of violated report invariants (empty when consistent).
std::vector<std::string> check_report(const AnalysisReport& report);

struct Truncation {
  int cut = 0;
  Rational e_max;
  Instance bucketed;
};

// Smallest cut m >= 2 with sum_{i >= m} p_i < e_max on both sides; letters
// >= m are merged into letter m. Throws NoValidCut when no cut works.
Truncation truncate_alphabet(const Pmf& px, const Pmf& py);

// Closed-form classification for m = 2. Equal first masses give CaseB1 with
// e_max = max(p_1, p_2). Otherwise 1/2 strictly between p^X_1 and p^Y_1 gives
// CaseB2 with e_max = p^X_1 p^Y_1 + p^X_2 p^Y_2, and anything else gives Case a
// (or its symmetric) with e_max = e1.
struct TwoLetterRule {
  LimitCase limit_case = LimitCase::CaseB1;
  Rational e_max;
};
TwoLetterRule two_letter_rule(const Instance& inst);

}  // namespace lci
