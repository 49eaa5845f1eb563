#pragma once

#include <cstddef>
#include <vector>

#include "lci/analysis.hpp"
#include "lci/rational.hpp"

namespace lci {

// A split-point pair (lambda^X, lambda^Y) over the report's slots. For J only
// the limiting side is filled; the other vector is empty.
struct GridPoint {
  std::vector<Rational> x;
  std::vector<Rational> y;
};

enum class PolytopeKind { Simplex, J, K };

struct PolytopeGrid {
  PolytopeKind kind = PolytopeKind::Simplex;
  // Affine dimension of the sampled set.
  std::size_t dimension = 0;
  int resolution = 0;
  std::vector<GridPoint> points;
};

inline constexpr std::size_t kMaxGridPoints = 5'000'000;

// Points of the simplex over the listed slots (1-based) with step 1/r, as
// vectors of length `slots`. Throws GridTooLarge above kMaxGridPoints.
std::vector<std::vector<Rational>> simplex_grid(std::size_t slots, const std::vector<int>& support, int r);

// Case a: lambda on the limiting side, supported on I, with
// sum_I lambda_i / p^other_i <= 1 / p^limiting_max.
PolytopeGrid grid_J(const AnalysisReport& report, int r);
bool in_J(const AnalysisReport& report, const std::vector<Rational>& lambda);

// Case b: the maximizer set of f. CaseB1 couples lambda^X = lambda^Y on I.
// CaseB2 steps the free coordinates of lambda^X by 1/r and solves for two
// pivot slots; lambda^Y_i = p^X_i lambda^X_i / p^Y_i.
PolytopeGrid grid_K(const AnalysisReport& report, int r);
bool in_K(const AnalysisReport& report, const GridPoint& point);

}  // namespace lci
