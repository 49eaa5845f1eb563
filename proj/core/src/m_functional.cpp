#include "lci/m_functional.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lci/errors.hpp"
#include "lci/lp.hpp"
#include "lci/tolerances.hpp"

namespace lci {

void check_perturbation(const AnalysisReport& report, const Perturbation& nu) {
  if (nu.nu_x.size() != report.slots() || nu.nu_y.size() != report.slots()) {
    throw Error(ErrorKind::BadPerturbation, "perturbation has wrong dimension");
  }
  const auto mask = report.active_mask();
  for (std::size_t i = 0; i < report.slots(); ++i) {
    if (!std::isfinite(nu.nu_x[i]) || !std::isfinite(nu.nu_y[i])) {
      throw Error(ErrorKind::BadPerturbation, "non-finite perturbation entry");
    }
    if (!mask[i] && (nu.nu_x[i] != 0.0 || nu.nu_y[i] != 0.0)) {
      throw Error(ErrorKind::BadPerturbation, "perturbation must vanish off the active set");
    }
  }
}

MClosed::MClosed(const AnalysisReport& report) {
  if (report.is_case_a()) throw Error(ErrorKind::WrongCase, "the closed form needs Case b");
  for (int i : report.active) active_.push_back(static_cast<std::size_t>(i - 1));
  if (const auto* c = std::get_if<CaseB1Constants>(&report.constants)) {
    b1_ = true;
    s_x_ = to_double(c->s_x);
    t_x_ = to_double(c->t_x);
    s_y_ = to_double(c->s_y);
    t_y_ = to_double(c->t_y);
  } else {
    const auto& c2 = std::get<CaseB2Constants>(report.constants);
    b1_ = false;
    wx_.assign(report.slots(), 0.0);
    wy_.assign(report.slots(), 0.0);
    for (std::size_t i : active_) {
      wx_[i] = to_double(c2.s / report.px[i]);
      wy_[i] = to_double(c2.t / report.py[i]);
    }
  }
}

double MClosed::operator()(const double* nu_x, const double* nu_y) const {
  if (b1_) {
    double sx = 0.0, sy = 0.0;
    for (std::size_t i : active_) {
      sx += nu_x[i];
      sy += nu_y[i];
    }
    return sx <= sy ? s_x_ * sy + t_x_ * sx : s_y_ * sx + t_y_ * sy;
  }
  double total = 0.0;
  for (std::size_t i : active_) total += wx_[i] * nu_x[i] + wy_[i] * nu_y[i];
  return total;
}

double m_closed(const AnalysisReport& report, const Perturbation& nu) {
  if (report.is_case_a()) throw Error(ErrorKind::WrongCase, "the closed form needs Case b");
  check_perturbation(report, nu);
  return MClosed(report)(nu.nu_x.data(), nu.nu_y.data());
}

MOracleResult m_lp_oracle(const AnalysisReport& report, const Perturbation& nu) {
  if (report.is_case_a()) throw Error(ErrorKind::WrongCase, "the functional is unbounded in Case a");
  check_perturbation(report, nu);
  const std::size_t l = report.slots();
  const auto mask = report.active_mask();

  // Variables: x^X (l, free on I), x^Y (l, free on I), t (l, free).
  const std::size_t n = 3 * l;
  LpProblem<double> lp;
  lp.objective.assign(n, 0.0);
  lp.signs.assign(n, VarSign::Free);
  for (std::size_t i = 0; i < l; ++i) {
    lp.objective[2 * l + i] = 1.0;
    if (!mask[i]) {
      lp.signs[i] = VarSign::NonNegative;
      lp.signs[l + i] = VarSign::NonNegative;
    }
    // t_i - p^X_i x^X_i <= nu^X_i
    std::vector<double> row(n, 0.0);
    row[2 * l + i] = 1.0;
    row[i] = -to_double(report.px[i]);
    lp.le_rows.push_back(row);
    lp.le_rhs.push_back(nu.nu_x[i]);
    row[i] = 0.0;
    row[l + i] = -to_double(report.py[i]);
    lp.le_rows.push_back(row);
    lp.le_rhs.push_back(nu.nu_y[i]);
  }
  std::vector<double> sum_x(n, 0.0), sum_y(n, 0.0);
  for (std::size_t i = 0; i < l; ++i) {
    sum_x[i] = 1.0;
    sum_y[l + i] = 1.0;
  }
  lp.eq_rows = {sum_x, sum_y};
  lp.eq_rhs = {0.0, 0.0};

  double nu_inf = 0.0;
  for (std::size_t i = 0; i < l; ++i) nu_inf = std::max({nu_inf, std::abs(nu.nu_x[i]), std::abs(nu.nu_y[i])});
  double box = 4.0 * static_cast<double>(l) * (nu_inf + 1.0);

  std::optional<double> previous;
  for (int d = 0; d <= kMaxBoxDoublings; ++d) {
    lp.box.assign(n, std::nullopt);
    for (std::size_t j = 0; j < 2 * l; ++j) lp.box[j] = box;
    const auto res = lp_solve(lp);
    if (res.status != LpStatus::Optimal) {
      throw Error(ErrorKind::LpFailure, "boxed LP for the functional did not reach an optimum");
    }
    if (previous && std::abs(res.optimum - *previous) <=
                        kTolerances.lp_box_stability * std::max(1.0, std::abs(res.optimum))) {
      return MOracleResult{res.optimum, box / 2.0, d - 1};
    }
    previous = res.optimum;
    box *= 2.0;
  }
  throw Error(ErrorKind::BoxEscape, "optimum kept growing with the box");
}

}  // namespace lci
