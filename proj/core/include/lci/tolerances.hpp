#pragma once

namespace lci {

// Every numeric threshold used by the library lives here.
struct Tolerances {
  // |sum(p) - 1| accepted for floating-point pmf input.
  double pmf_sum = 1e-12;
  // Generic comparison slack for float-valued analysis quantities.
  double analysis = 1e-12;
  // Agreement between the closed-form m-functional and its LP oracle.
  double lp_oracle = 1e-8;
  // Residual allowed on s/p^X_i + t/p^Y_i = 1 over the active set.
  double span_residual = 1e-10;
  // Pivot/feasibility threshold inside the floating-point simplex.
  double lp_pivot = 1e-10;
  // Relative gap under which two box-doubled LP optima count as equal.
  double lp_box_stability = 1e-10;
  // Row-sum identity of simulated multinomial Brownian paths.
  double path_row_sum = 1e-9;
};

inline constexpr Tolerances kTolerances{};

}  // namespace lci
