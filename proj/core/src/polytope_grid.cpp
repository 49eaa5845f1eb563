#include "lci/polytope_grid.hpp"

#include <algorithm>
#include <string>

#include "lci/errors.hpp"
#include "lci/exact_lci.hpp"

namespace lci {
namespace {

std::size_t count_compositions(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i + 1 <= k; ++i) r = r * static_cast<double>(n + i) / static_cast<double>(i);
  return r > 1e15 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(r + 0.5);
}

// B2 pivot pair: the first two active slots with different ratios p^X/p^Y.
std::pair<std::size_t, std::size_t> b2_pivots(const AnalysisReport& rep) {
  for (std::size_t a = 0; a < rep.active.size(); ++a) {
    for (std::size_t b = a + 1; b < rep.active.size(); ++b) {
      const auto i = static_cast<std::size_t>(rep.active[a] - 1);
      const auto j = static_cast<std::size_t>(rep.active[b] - 1);
      if (rep.px[i] / rep.py[i] != rep.px[j] / rep.py[j]) return {a, b};
    }
  }
  throw Error(ErrorKind::InconsistentSpan, "CaseB2 without two independent active slots");
}

}  // namespace

std::vector<std::vector<Rational>> simplex_grid(std::size_t slots, const std::vector<int>& support, int r) {
  if (r < 1) throw Error(ErrorKind::BadInput, "grid resolution must be >= 1");
  if (support.empty()) throw Error(ErrorKind::EmptyGrid, "empty support");
  if (count_compositions(static_cast<std::size_t>(r), support.size()) > kMaxGridPoints) {
    throw Error(ErrorKind::GridTooLarge, "simplex grid too large");
  }
  std::vector<std::vector<Rational>> out;
  for (const auto& c : enumerate_compositions(static_cast<std::size_t>(r), support.size())) {
    std::vector<Rational> p(slots, Rational(0));
    for (std::size_t k = 0; k < support.size(); ++k) {
      p[static_cast<std::size_t>(support[k] - 1)] = Rational(static_cast<long>(c.parts[k]), r);
    }
    out.push_back(std::move(p));
  }
  return out;
}

bool in_J(const AnalysisReport& rep, const std::vector<Rational>& lambda) {
  const Side side = rep.limiting_side();
  const auto& lim = side == Side::X ? rep.px : rep.py;
  const auto& other = side == Side::X ? rep.py : rep.px;
  if (lambda.size() != rep.slots()) return false;
  const auto mask = rep.active_mask();
  Rational total = 0, weighted = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 0) return false;
    if (!mask[i] && lambda[i] != 0) return false;
    total += lambda[i];
    weighted += lambda[i] / other[i];
  }
  const Rational top = *std::max_element(lim.begin(), lim.end());
  return total == 1 && weighted <= 1 / top;
}

PolytopeGrid grid_J(const AnalysisReport& rep, int r) {
  if (!rep.is_case_a()) throw Error(ErrorKind::WrongCase, "grid_J needs Case a");
  const Side side = rep.limiting_side();
  PolytopeGrid g;
  g.kind = PolytopeKind::J;
  g.resolution = r;
  g.dimension = rep.active.size() - 1;
  for (auto& p : simplex_grid(rep.slots(), rep.active, r)) {
    if (!in_J(rep, p)) continue;
    GridPoint gp;
    (side == Side::X ? gp.x : gp.y) = std::move(p);
    g.points.push_back(std::move(gp));
  }
  if (g.points.empty()) throw Error(ErrorKind::EmptyGrid, "no grid point of J at this resolution");
  return g;
}

bool in_K(const AnalysisReport& rep, const GridPoint& point) {
  if (rep.is_case_a()) throw Error(ErrorKind::WrongCase, "in_K needs Case b");
  if (point.x.size() != rep.slots() || point.y.size() != rep.slots()) return false;
  const auto mask = rep.active_mask();
  Rational sx = 0, sy = 0;
  for (std::size_t i = 0; i < rep.slots(); ++i) {
    if (point.x[i] < 0 || point.y[i] < 0) return false;
    if (!mask[i] && (point.x[i] != 0 || point.y[i] != 0)) return false;
    if (rep.px[i] * point.x[i] != rep.py[i] * point.y[i]) return false;
    sx += point.x[i];
    sy += point.y[i];
  }
  return sx == 1 && sy == 1 && f_value(rep.px, rep.py, point.x, point.y) == rep.e_max;
}

PolytopeGrid grid_K(const AnalysisReport& rep, int r) {
  if (rep.is_case_a()) throw Error(ErrorKind::WrongCase, "grid_K needs Case b");
  if (r < 1) throw Error(ErrorKind::BadInput, "grid resolution must be >= 1");
  PolytopeGrid g;
  g.kind = PolytopeKind::K;
  g.resolution = r;
  const std::size_t l = rep.slots();

  if (rep.limit_case == LimitCase::CaseB1) {
    g.dimension = rep.active.size() - 1;
    for (auto& p : simplex_grid(l, rep.active, r)) {
      GridPoint gp{p, p};
      g.points.push_back(std::move(gp));
    }
    return g;
  }

  // CaseB2: lambda^X on the simplex over I with sum_I lambda_i p^X_i / p^Y_i = 1.
  const auto [pa, pb] = b2_pivots(rep);
  const auto ia = static_cast<std::size_t>(rep.active[pa] - 1);
  const auto ib = static_cast<std::size_t>(rep.active[pb] - 1);
  std::vector<int> free_slots;
  for (std::size_t k = 0; k < rep.active.size(); ++k) {
    if (k != pa && k != pb) free_slots.push_back(rep.active[k]);
  }
  g.dimension = rep.active.size() - 2;
  std::vector<Rational> ratio(l);
  for (std::size_t i = 0; i < l; ++i) ratio[i] = rep.px[i] / rep.py[i];

  // Free coordinates take values k/r with total at most 1: compositions of r
  // into |free| + 1 parts, the last part being the pivots' share.
  if (count_compositions(static_cast<std::size_t>(r), free_slots.size() + 1) > kMaxGridPoints) {
    throw Error(ErrorKind::GridTooLarge, "CaseB2 grid too large");
  }
  for (const auto& c : enumerate_compositions(static_cast<std::size_t>(r), free_slots.size() + 1)) {
    std::vector<Rational> lx(l, Rational(0));
    Rational mass = 1, weighted = 1;
    for (std::size_t k = 0; k < free_slots.size(); ++k) {
      const auto i = static_cast<std::size_t>(free_slots[k] - 1);
      lx[i] = Rational(static_cast<long>(c.parts[k]), r);
      mass -= lx[i];
      weighted -= lx[i] * ratio[i];
    }
    // a + b = mass, a ratio_a + b ratio_b = weighted
    const Rational b = (weighted - mass * ratio[ia]) / (ratio[ib] - ratio[ia]);
    const Rational a = mass - b;
    if (a < 0 || b < 0) continue;
    lx[ia] = a;
    lx[ib] = b;
    std::vector<Rational> ly(l, Rational(0));
    for (std::size_t i = 0; i < l; ++i) ly[i] = lx[i] * ratio[i];
    g.points.push_back(GridPoint{std::move(lx), std::move(ly)});
    if (free_slots.empty()) break;
  }
  if (g.points.empty()) throw Error(ErrorKind::EmptyGrid, "no grid point of K at this resolution; raise r");
  return g;
}

}  // namespace lci
