#pragma once

#include <vector>

#include "lci/analysis.hpp"

namespace lci {

// Perturbation of the split-point masses; both vectors have one entry per
// report slot and vanish off the active set.
struct Perturbation {
  std::vector<double> nu_x;
  std::vector<double> nu_y;
};

// Throws BadPerturbation when dimensions are wrong or an inactive entry is
// nonzero.
void check_perturbation(const AnalysisReport& report, const Perturbation& nu);

// Closed form of the second-order functional. CaseB1:
//   s_X S^Y + t_X S^X  if S^X <= S^Y,   s_Y S^X + t_Y S^Y  otherwise,
// with S = sum over I of nu. CaseB2: sum_I (s nu^X_i / p^X_i + t nu^Y_i / p^Y_i).
double m_closed(const AnalysisReport& report, const Perturbation& nu);

// Same precomputation as m_closed, for hot loops over many perturbations.
class MClosed {
 public:
  explicit MClosed(const AnalysisReport& report);
  // nu_x, nu_y indexed by slot; entries off I are ignored.
  double operator()(const double* nu_x, const double* nu_y) const;

 private:
  bool b1_ = true;
  std::vector<std::size_t> active_;
  double s_x_ = 0, t_x_ = 0, s_y_ = 0, t_y_ = 0;
  std::vector<double> wx_, wy_;
};

struct MOracleResult {
  double value = 0.0;
  double box = 0.0;
  int doublings = 0;
};

// max over x^X, x^Y (sum zero, nonnegative off I) of
//   sum_i min(p^X_i x^X_i + nu^X_i, p^Y_i x^Y_i + nu^Y_i),
// solved as an LP inside |x| <= B. B starts at 4 m (|nu|_inf + 1) and doubles
// until the optimum stops changing; BoxEscape after kMaxBoxDoublings.
inline constexpr int kMaxBoxDoublings = 20;
MOracleResult m_lp_oracle(const AnalysisReport& report, const Perturbation& nu);

}  // namespace lci
