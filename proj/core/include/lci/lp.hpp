#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lci/rational.hpp"

namespace lci {

enum class LpStatus { Optimal, Unbounded, Infeasible };

enum class VarSign { NonNegative, Free };

// maximize objective . x
// subject to  le_rows[k] . x <= le_rhs[k]
//             eq_rows[k] . x == eq_rhs[k]
//             x_j >= 0 unless signs[j] == Free  (empty signs: all nonnegative)
//             |x_j| <= box[j] where box[j] is set (empty box: no bounds)
template <class T>
struct LpProblem {
  std::vector<T> objective;
  std::vector<std::vector<T>> le_rows;
  std::vector<T> le_rhs;
  std::vector<std::vector<T>> eq_rows;
  std::vector<T> eq_rhs;
  std::vector<VarSign> signs;
  std::vector<std::optional<T>> box;

  std::size_t variables() const noexcept { return objective.size(); }
};

template <class T>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  T optimum{};
  std::vector<T> witness;
};

// Dense two-phase primal simplex with Bland's rule. With T = Rational the
// computation is exact; with T = double pivots below Tolerances::lp_pivot are
// treated as zero. Identical problems produce bit-identical results.
template <class T>
LpResult<T> lp_solve(const LpProblem<T>& problem);

extern template LpResult<double> lp_solve<double>(const LpProblem<double>&);
extern template LpResult<Rational> lp_solve<Rational>(const LpProblem<Rational>&);

// Largest violation of the problem's constraints at x (0 when feasible).
double lp_residual(const LpProblem<double>& problem, const std::vector<double>& x);

}  // namespace lci
