#include "lci/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lci/errors.hpp"
#include "lci/tolerances.hpp"

namespace lci {
namespace {

template <class T>
struct Num;

template <>
struct Num<double> {
  static double eps() { return kTolerances.lp_pivot; }
  static double abs(double v) { return std::abs(v); }
};

template <>
struct Num<Rational> {
  static Rational eps() { return Rational(0); }
  static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
};

template <class T>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * (cols + 1), T(0)), basis_(rows, 0) {}

  T& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
  const T& at(std::size_t i, std::size_t j) const { return data_[i * (cols_ + 1) + j]; }
  T& rhs(std::size_t i) { return at(i, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c, std::vector<T>& cost) {
    const T inv = T(1) / at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) *= inv;
    at(r, c) = T(1);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const T factor = at(i, c);
      if (factor == T(0)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= factor * at(r, j);
      at(i, c) = T(0);
    }
    const T factor = cost[c];
    if (factor != T(0)) {
      for (std::size_t j = 0; j <= cols_; ++j) cost[j] -= factor * at(r, j);
      cost[c] = T(0);
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1)),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (cols_ + 1)));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
  std::vector<std::size_t> basis_;
};

// cost[j] holds the reduced cost of column j; cost[cols] holds -objective.
// Returns false when the problem is unbounded in an allowed direction.
template <class T>
bool run_simplex(Tableau<T>& tab, std::vector<T>& cost, const std::vector<bool>& allowed) {
  const T eps = Num<T>::eps();
  const std::size_t max_iterations = 50'000;
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    std::size_t enter = tab.cols();
    for (std::size_t j = 0; j < tab.cols(); ++j) {
      if (allowed[j] && cost[j] > eps) {
        enter = j;
        break;
      }
    }
    if (enter == tab.cols()) return true;

    std::size_t leave = tab.rows();
    T best_ratio{};
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      const T& a = tab.at(i, enter);
      if (!(a > eps)) continue;
      const T ratio = tab.rhs(i) / a;
      if (leave == tab.rows()) {
        leave = i;
        best_ratio = ratio;
        continue;
      }
      const T slack = eps * (T(1) + Num<T>::abs(best_ratio));
      if (ratio < best_ratio - slack) {
        leave = i;
        best_ratio = ratio;
      } else if (!(ratio > best_ratio + slack) && tab.basis()[i] < tab.basis()[leave]) {
        leave = i;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
    if (leave == tab.rows()) return false;
    tab.pivot(leave, enter, cost);
  }
  throw Error(ErrorKind::LpFailure, "simplex iteration limit reached");
}

}  // namespace

template <class T>
LpResult<T> lp_solve(const LpProblem<T>& problem) {
  const std::size_t n = problem.variables();
  auto is_free = [&](std::size_t j) {
    return !problem.signs.empty() && problem.signs[j] == VarSign::Free;
  };
  if ((!problem.signs.empty() && problem.signs.size() != n) ||
      (!problem.box.empty() && problem.box.size() != n) ||
      problem.le_rows.size() != problem.le_rhs.size() ||
      problem.eq_rows.size() != problem.eq_rhs.size()) {
    throw Error(ErrorKind::LpFailure, "inconsistent LP dimensions");
  }
  for (const auto& row : problem.le_rows) {
    if (row.size() != n) throw Error(ErrorKind::LpFailure, "inequality row has wrong length");
  }
  for (const auto& row : problem.eq_rows) {
    if (row.size() != n) throw Error(ErrorKind::LpFailure, "equality row has wrong length");
  }

  // Structural columns: x_j, or x_j^+ and x_j^- for free variables.
  std::vector<std::size_t> pos_col(n), neg_col(n, static_cast<std::size_t>(-1));
  std::size_t structural = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = structural++;
    if (is_free(j)) neg_col[j] = structural++;
  }
  auto expand = [&](const std::vector<T>& row) {
    std::vector<T> out(structural, T(0));
    for (std::size_t j = 0; j < n; ++j) {
      out[pos_col[j]] = row[j];
      if (is_free(j)) out[neg_col[j]] = -row[j];
    }
    return out;
  };

  std::vector<std::vector<T>> le_rows;
  std::vector<T> le_rhs;
  for (std::size_t k = 0; k < problem.le_rows.size(); ++k) {
    le_rows.push_back(expand(problem.le_rows[k]));
    le_rhs.push_back(problem.le_rhs[k]);
  }
  if (!problem.box.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!problem.box[j]) continue;
      std::vector<T> unit(n, T(0));
      unit[j] = T(1);
      le_rows.push_back(expand(unit));
      le_rhs.push_back(*problem.box[j]);
      if (is_free(j)) {
        unit[j] = T(-1);
        le_rows.push_back(expand(unit));
        le_rhs.push_back(*problem.box[j]);
      }
    }
  }

  const std::size_t n_le = le_rows.size();
  const std::size_t n_eq = problem.eq_rows.size();
  const std::size_t rows = n_le + n_eq;

  std::size_t artificial_count = n_eq;
  for (std::size_t k = 0; k < n_le; ++k) {
    if (le_rhs[k] < T(0)) ++artificial_count;
  }
  const std::size_t slack0 = structural;
  const std::size_t art0 = slack0 + n_le;
  const std::size_t cols = art0 + artificial_count;

  Tableau<T> tab(rows, cols);
  std::size_t next_art = art0;
  for (std::size_t k = 0; k < n_le; ++k) {
    const bool flip = le_rhs[k] < T(0);
    const T sign = flip ? T(-1) : T(1);
    for (std::size_t j = 0; j < structural; ++j) tab.at(k, j) = sign * le_rows[k][j];
    tab.at(k, slack0 + k) = sign;
    tab.rhs(k) = sign * le_rhs[k];
    if (flip) {
      tab.at(k, next_art) = T(1);
      tab.basis()[k] = next_art++;
    } else {
      tab.basis()[k] = slack0 + k;
    }
  }
  for (std::size_t k = 0; k < n_eq; ++k) {
    const std::size_t r = n_le + k;
    const auto row = expand(problem.eq_rows[k]);
    const bool flip = problem.eq_rhs[k] < T(0);
    const T sign = flip ? T(-1) : T(1);
    for (std::size_t j = 0; j < structural; ++j) tab.at(r, j) = sign * row[j];
    tab.rhs(r) = sign * problem.eq_rhs[k];
    tab.at(r, next_art) = T(1);
    tab.basis()[r] = next_art++;
  }

  const T eps = Num<T>::eps();
  std::vector<bool> allowed(cols, true);

  // Phase 1: maximize -sum(artificials).
  if (artificial_count > 0) {
    std::vector<T> cost(cols + 1, T(0));
    for (std::size_t j = art0; j < cols; ++j) cost[j] = T(-1);
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (tab.basis()[i] >= art0) {
        for (std::size_t j = 0; j <= cols; ++j) cost[j] += tab.at(i, j);
      }
    }
    run_simplex(tab, cost, allowed);
    // cost[cols] = -(phase-1 objective) = sum of remaining artificials.
    T infeasibility = T(0);
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (tab.basis()[i] >= art0) infeasibility += Num<T>::abs(tab.rhs(i));
    }
    if (infeasibility > eps * T(static_cast<double>(rows + 1)) * T(100)) {
      return LpResult<T>{LpStatus::Infeasible, T(0), {}};
    }
    // Drive zero-valued artificials out of the basis or drop redundant rows.
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basis()[i] < art0) {
        ++i;
        continue;
      }
      std::size_t col = cols;
      for (std::size_t j = 0; j < art0; ++j) {
        if (Num<T>::abs(tab.at(i, j)) > eps) {
          col = j;
          break;
        }
      }
      if (col == cols) {
        tab.drop_row(i);
        continue;
      }
      std::vector<T> dummy(cols + 1, T(0));
      tab.pivot(i, col, dummy);
      ++i;
    }
    for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
  }

  // Phase 2.
  std::vector<T> cost(cols + 1, T(0));
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = problem.objective[j];
    if (is_free(j)) cost[neg_col[j]] = -problem.objective[j];
  }
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    const T cb = cost[tab.basis()[i]];
    if (cb == T(0)) continue;
    for (std::size_t j = 0; j <= cols; ++j) cost[j] -= cb * tab.at(i, j);
  }
  if (!run_simplex(tab, cost, allowed)) {
    return LpResult<T>{LpStatus::Unbounded, T(0), {}};
  }

  std::vector<T> columns(cols, T(0));
  for (std::size_t i = 0; i < tab.rows(); ++i) columns[tab.basis()[i]] = tab.rhs(i);
  LpResult<T> result;
  result.status = LpStatus::Optimal;
  result.witness.assign(n, T(0));
  for (std::size_t j = 0; j < n; ++j) {
    result.witness[j] = columns[pos_col[j]];
    if (is_free(j)) result.witness[j] -= columns[neg_col[j]];
  }
  result.optimum = T(0);
  for (std::size_t j = 0; j < n; ++j) result.optimum += problem.objective[j] * result.witness[j];
  return result;
}

template LpResult<double> lp_solve<double>(const LpProblem<double>&);
template LpResult<Rational> lp_solve<Rational>(const LpProblem<Rational>&);

double lp_residual(const LpProblem<double>& problem, const std::vector<double>& x) {
  double worst = 0.0;
  auto dot = [&](const std::vector<double>& row) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += row[j] * x[j];
    return s;
  };
  for (std::size_t k = 0; k < problem.le_rows.size(); ++k) {
    worst = std::max(worst, dot(problem.le_rows[k]) - problem.le_rhs[k]);
  }
  for (std::size_t k = 0; k < problem.eq_rows.size(); ++k) {
    worst = std::max(worst, std::abs(dot(problem.eq_rows[k]) - problem.eq_rhs[k]));
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const bool free = !problem.signs.empty() && problem.signs[j] == VarSign::Free;
    if (!free) worst = std::max(worst, -x[j]);
    if (!problem.box.empty() && problem.box[j]) worst = std::max(worst, std::abs(x[j]) - *problem.box[j]);
  }
  return worst;
}

}  // namespace lci
