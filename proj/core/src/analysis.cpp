#include "lci/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lci/errors.hpp"
#include "lci/lp.hpp"
#include "lci/tolerances.hpp"

namespace lci {
namespace {

Rational min_of(const Rational& a, const Rational& b) { return a < b ? a : b; }

Rational max_entry(const std::vector<Rational>& v) { return *std::max_element(v.begin(), v.end()); }

std::vector<int> argmax_slots(const std::vector<Rational>& v) {
  const Rational top = max_entry(v);
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == top) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  // Saturates at SIZE_MAX; only compared against grid limits.
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r > 1e18 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(std::llround(r));
}

void check_weights(const std::vector<Rational>& px, const std::vector<Rational>& py) {
  if (px.size() != py.size()) throw Error(ErrorKind::AlphabetMismatch, "weight vectors differ in length");
  if (px.size() < 1) throw Error(ErrorKind::TooShort, "no slots");
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (px[i] <= 0 || py[i] <= 0) throw Error(ErrorKind::NonPositiveMass, "weights must be positive");
  }
}

Rational score(const std::vector<Rational>& px, const std::vector<Rational>& py, std::size_t i,
               std::size_t j) {
  const Rational num = px[i] * py[i] * (px[j] - py[j]) + px[j] * py[j] * (py[i] - px[i]);
  const Rational den = py[i] * px[j] - px[i] * py[j];
  return num / den;
}

CaseB1Constants b1_constants(const std::vector<Rational>& px, const std::vector<Rational>& py,
                             const std::vector<bool>& mask, const Rational& e) {
  auto side = [&](const std::vector<Rational>& p, const std::vector<Rational>& q) {
    std::optional<Rational> best;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (mask[i] || p[i] < e) continue;
      if (p[i] == q[i]) throw Error(ErrorKind::InvariantViolation, "inactive slot with equal weights at or above e_max");
      const Rational v = q[i] * (p[i] - e) / (e * (p[i] - q[i]));
      if (!best || v > *best) best = v;
    }
    return best.value_or(Rational(0));
  };
  CaseB1Constants c;
  c.s_x = side(px, py);
  c.t_x = 1 - c.s_x;
  c.s_y = side(py, px);
  c.t_y = 1 - c.s_y;
  return c;
}

CaseB2Constants b2_constants(const std::vector<Rational>& px, const std::vector<Rational>& py,
                             const std::vector<int>& active) {
  for (std::size_t a = 0; a < active.size(); ++a) {
    for (std::size_t b = a + 1; b < active.size(); ++b) {
      const std::size_t i = static_cast<std::size_t>(active[a] - 1);
      const std::size_t j = static_cast<std::size_t>(active[b] - 1);
      // [1/px_i 1/py_i; 1/px_j 1/py_j] [s; t] = [1; 1]
      const Rational a11 = 1 / px[i], a12 = 1 / py[i], a21 = 1 / px[j], a22 = 1 / py[j];
      const Rational det = a11 * a22 - a12 * a21;
      if (det == 0) continue;
      CaseB2Constants c;
      c.s = (a22 - a12) / det;
      c.t = (a11 - a21) / det;
      double worst = 0.0;
      for (int k : active) {
        const auto kk = static_cast<std::size_t>(k - 1);
        const Rational res = c.s / px[kk] + c.t / py[kk] - 1;
        worst = std::max(worst, std::abs(to_double(res)));
      }
      if (worst > kTolerances.span_residual) {
        throw Error(ErrorKind::InconsistentSpan,
                    "(s,t) residual " + std::to_string(worst) + " exceeds tolerance");
      }
      return c;
    }
  }
  throw Error(ErrorKind::InconsistentSpan, "no independent pair of active slots");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvariantViolation, what);
}

}  // namespace

std::string_view to_string(LimitCase c) {
  switch (c) {
    case LimitCase::CaseA: return "CaseA";
    case LimitCase::CaseASymmetric: return "CaseASymmetric";
    case LimitCase::CaseB1: return "CaseB1";
    case LimitCase::CaseB2: return "CaseB2";
  }
  return "?";
}

LimitCase limit_case_from_string(std::string_view text) {
  for (auto c : {LimitCase::CaseA, LimitCase::CaseASymmetric, LimitCase::CaseB1, LimitCase::CaseB2}) {
    if (to_string(c) == text) return c;
  }
  throw Error(ErrorKind::BadInput, "unknown case tag '" + std::string(text) + "'");
}

std::vector<bool> AnalysisReport::active_mask() const {
  std::vector<bool> mask(slots(), false);
  for (int i : active) mask[static_cast<std::size_t>(i - 1)] = true;
  return mask;
}

Side AnalysisReport::limiting_side() const {
  if (limit_case == LimitCase::CaseA) return Side::X;
  if (limit_case == LimitCase::CaseASymmetric) return Side::Y;
  throw Error(ErrorKind::WrongCase, "limiting side is only defined in Case a");
}

bool pair_admissible(const std::vector<Rational>& px, const std::vector<Rational>& py, std::size_t i,
                     std::size_t j) {
  return px[i] < px[j] && py[i] > py[j] && px[i] < py[i] && py[j] < px[j];
}

Rational pair_score(const Instance& inst, Letter i, Letter j) {
  const auto m = static_cast<Letter>(inst.m());
  if (i < 1 || i > m || j < 1 || j > m) throw Error(ErrorKind::BadLetter, "letter out of range");
  const auto& px = inst.px().probs();
  const auto& py = inst.py().probs();
  const auto a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(j - 1);
  if (!pair_admissible(px, py, a, b)) {
    throw Error(ErrorKind::InadmissiblePair,
                "pair (" + std::to_string(i) + "," + std::to_string(j) + ") is not admissible");
  }
  return score(px, py, a, b);
}

EmaxResult compute_emax(const std::vector<Rational>& px, const std::vector<Rational>& py) {
  check_weights(px, py);
  EmaxResult r;
  r.e1 = min_of(px[0], py[0]);
  for (std::size_t i = 1; i < px.size(); ++i) r.e1 = std::max(r.e1, min_of(px[i], py[i]));
  for (std::size_t i = 0; i < px.size(); ++i) {
    for (std::size_t j = 0; j < px.size(); ++j) {
      if (i == j || !pair_admissible(px, py, i, j)) continue;
      Rational v = score(px, py, i, j);
      if (!r.e2 || v > *r.e2) r.e2 = std::move(v);
    }
  }
  r.e_max = (r.e2 && *r.e2 > r.e1) ? *r.e2 : r.e1;
  return r;
}

EmaxResult compute_emax(const Instance& inst) { return compute_emax(inst.px().probs(), inst.py().probs()); }

Rational f_value(const std::vector<Rational>& px, const std::vector<Rational>& py,
                 const std::vector<Rational>& lx, const std::vector<Rational>& ly) {
  if (lx.size() != px.size() || ly.size() != py.size()) {
    throw Error(ErrorKind::AlphabetMismatch, "point dimension does not match the weights");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < px.size(); ++i) total += min_of(px[i] * lx[i], py[i] * ly[i]);
  return total;
}

double emax_grid_oracle(const Instance& inst, int r) {
  if (r < 1) throw Error(ErrorKind::BadInput, "grid resolution must be >= 1");
  const std::size_t m = inst.m();
  const std::size_t side = binomial(static_cast<std::size_t>(r) + m - 1, m - 1);
  if (side > kMaxOracleGrid || side * side > kMaxOracleGrid) {
    throw Error(ErrorKind::GridTooLarge, "oracle grid has more than 1e7 point pairs");
  }
  const auto comps = enumerate_compositions(static_cast<std::size_t>(r), m);
  const auto px = inst.px().as_doubles();
  const auto py = inst.py().as_doubles();
  const double inv_r = 1.0 / r;
  std::vector<std::vector<double>> ax, ay;
  ax.reserve(comps.size());
  ay.reserve(comps.size());
  for (const auto& c : comps) {
    std::vector<double> vx(m), vy(m);
    for (std::size_t i = 0; i < m; ++i) {
      vx[i] = px[i] * static_cast<double>(c.parts[i]) * inv_r;
      vy[i] = py[i] * static_cast<double>(c.parts[i]) * inv_r;
    }
    ax.push_back(std::move(vx));
    ay.push_back(std::move(vy));
  }
  double best = 0.0;
  for (const auto& vx : ax) {
    for (const auto& vy : ay) {
      double f = 0.0;
      for (std::size_t i = 0; i < m; ++i) f += std::min(vx[i], vy[i]);
      best = std::max(best, f);
    }
  }
  return best;
}

ActiveSet compute_I(const std::vector<Rational>& px, const std::vector<Rational>& py,
                    const Rational& e_max) {
  check_weights(px, py);
  const std::size_t l = px.size();
  LpProblem<Rational> lp;
  lp.objective.assign(l, Rational(0));
  std::vector<Rational> rx(l), ry(l);
  for (std::size_t i = 0; i < l; ++i) {
    rx[i] = 1 / px[i];
    ry[i] = 1 / py[i];
  }
  lp.le_rows = {rx, ry};
  lp.le_rhs = {Rational(1), Rational(1)};
  lp.eq_rows = {std::vector<Rational>(l, Rational(1))};
  lp.eq_rhs = {e_max};

  ActiveSet out;
  for (std::size_t k = 0; k < l; ++k) {
    std::fill(lp.objective.begin(), lp.objective.end(), Rational(0));
    lp.objective[k] = 1;
    auto res = lp_solve(lp);
    if (res.status != LpStatus::Optimal) {
      throw Error(ErrorKind::LpFailure, "active-set LP for slot " + std::to_string(k + 1) + " failed");
    }
    if (res.optimum > 0) {
      out.letters.push_back(static_cast<int>(k) + 1);
      out.witnesses.push_back(std::move(res.witness));
    }
  }
  if (out.letters.empty()) throw Error(ErrorKind::LpFailure, "empty active set");
  return out;
}

AnalysisReport analyze_weights(std::vector<Rational> px, std::vector<Rational> py,
                               std::vector<Letter> slot_letter, int alphabet_size, bool exact) {
  check_weights(px, py);
  if (slot_letter.size() != px.size()) throw Error(ErrorKind::BadInput, "slot map has wrong length");

  AnalysisReport rep;
  rep.px = px;
  rep.py = py;
  rep.slot_letter = std::move(slot_letter);
  rep.alphabet_size = alphabet_size;
  rep.exact = exact;
  const EmaxResult em = compute_emax(px, py);
  rep.e1 = em.e1;
  rep.e2 = em.e2;
  rep.e_max = em.e_max;

  const ActiveSet act = compute_I(px, py, rep.e_max);
  rep.active = act.letters;
  const std::size_t l = px.size();

  bool achiever_x_limited = false, achiever_y_limited = false;
  for (std::size_t i = 0; i < l; ++i) {
    if (min_of(px[i], py[i]) != rep.e1) continue;
    if (px[i] < py[i]) achiever_x_limited = true;
    if (py[i] < px[i]) achiever_y_limited = true;
  }

  if (rep.e2 && rep.e1 < *rep.e2) {
    rep.limit_case = LimitCase::CaseB2;
  } else if (achiever_x_limited || achiever_y_limited) {
    rep.limit_case = achiever_x_limited ? LimitCase::CaseA : LimitCase::CaseASymmetric;
    rep.both_directions = achiever_x_limited && achiever_y_limited;
  } else if (!rep.e2 || rep.e1 > *rep.e2) {
    rep.limit_case = LimitCase::CaseB1;
  } else {
    rep.limit_case = LimitCase::CaseB2;
  }

  // u^I: average of the per-slot maximizers.
  std::vector<Rational> u(l, Rational(0));
  for (const auto& w : act.witnesses) {
    for (std::size_t i = 0; i < l; ++i) u[i] += w[i];
  }
  for (auto& v : u) v /= static_cast<long>(act.witnesses.size());
  Rational sx = 0, sy = 0;
  for (std::size_t i = 0; i < l; ++i) {
    sx += u[i] / px[i];
    sy += u[i] / py[i];
  }
  rep.anchor_x.resize(l);
  rep.anchor_y.resize(l);
  for (std::size_t i = 0; i < l; ++i) {
    rep.anchor_x[i] = u[i] / px[i] / sx;
    rep.anchor_y[i] = u[i] / py[i] / sy;
  }

  const auto mask = rep.active_mask();
  switch (rep.limit_case) {
    case LimitCase::CaseA:
    case LimitCase::CaseASymmetric: {
      const bool x_side = rep.limit_case == LimitCase::CaseA;
      const auto& lim = x_side ? px : py;
      const auto& other = x_side ? py : px;
      const Rational top = max_entry(lim);
      require(rep.e_max == top, "Case a with e_max different from the limiting maximum");
      require(rep.active == argmax_slots(lim), "Case a active set is not the limiting argmax");
      require((x_side ? sx : sy) == 1, "Case a anchor does not saturate the limiting side");
      CaseAConstants c;
      for (int i : rep.active) {
        if (other[static_cast<std::size_t>(i - 1)] > top) {
          c.i1 = i;
          break;
        }
      }
      require(c.i1 != 0, "Case a without a slot beating the limiting maximum");
      rep.constants = c;
      break;
    }
    case LimitCase::CaseB1: {
      std::vector<int> expected;
      for (std::size_t i = 0; i < l; ++i) {
        if (px[i] == rep.e_max && py[i] == rep.e_max) expected.push_back(static_cast<int>(i) + 1);
      }
      require(rep.active == expected, "CaseB1 active set differs from the slots with both weights at e_max");
      require(sx == 1 && sy == 1, "CaseB1 anchor does not saturate both sides");
      rep.constants = b1_constants(px, py, mask, rep.e_max);
      break;
    }
    case LimitCase::CaseB2: {
      require(sx == 1 && sy == 1, "CaseB2 anchor does not saturate both sides");
      rep.constants = b2_constants(px, py, rep.active);
      break;
    }
  }

  return rep;
}

AnalysisReport classify_case(const Instance& inst) {
  std::vector<Letter> slots(inst.m());
  std::iota(slots.begin(), slots.end(), 1);
  return analyze_weights(inst.px().probs(), inst.py().probs(), std::move(slots),
                         static_cast<int>(inst.m()), inst.exact());
}

AnalysisReport blocks_analysis(const Instance& inst, const BlockOrder& alpha) {
  if (static_cast<std::size_t>(alpha.alphabet_size()) != inst.m()) {
    throw Error(ErrorKind::AlphabetMismatch, "block order alphabet differs from the instance");
  }
  std::vector<Rational> px, py;
  std::vector<Letter> slots(alpha.slots().begin(), alpha.slots().end());
  for (Letter a : slots) {
    px.push_back(inst.px()[static_cast<std::size_t>(a - 1)]);
    py.push_back(inst.py()[static_cast<std::size_t>(a - 1)]);
  }
  AnalysisReport rep = analyze_weights(std::move(px), std::move(py), slots,
                                       static_cast<int>(inst.m()), inst.exact());
  const AnalysisReport base = classify_case(inst);
  require(rep.e_max == base.e_max, "block e_max differs from the letter e_max");
  const auto base_mask = base.active_mask();
  std::vector<int> preimage;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (base_mask[static_cast<std::size_t>(slots[k] - 1)]) preimage.push_back(static_cast<int>(k) + 1);
  }
  require(rep.active == preimage, "block active slots differ from the preimage of I");
  return rep;
}

std::vector<std::string> check_report(const AnalysisReport& rep) {
  std::vector<std::string> bad;
  const Rational expected = (rep.e2 && *rep.e2 > rep.e1) ? *rep.e2 : rep.e1;
  if (rep.e_max != expected) bad.push_back("e_max != max(e1, e2)");
  if (rep.e1 > rep.e_max) bad.push_back("e1 > e_max");
  if (rep.e_max > min_of(max_entry(rep.px), max_entry(rep.py))) bad.push_back("e_max above min(max p^X, max p^Y)");

  const auto mask = rep.active_mask();
  Rational sum_x = 0, sum_y = 0;
  for (std::size_t i = 0; i < rep.slots(); ++i) {
    if (rep.anchor_x[i] < 0 || rep.anchor_y[i] < 0) bad.push_back("negative anchor coordinate");
    if (!mask[i] && (rep.anchor_x[i] != 0 || rep.anchor_y[i] != 0)) bad.push_back("anchor not supported on I");
    if (mask[i] && (rep.anchor_x[i] == 0 || rep.anchor_y[i] == 0)) bad.push_back("anchor vanishes on I");
    sum_x += rep.anchor_x[i];
    sum_y += rep.anchor_y[i];
  }
  if (sum_x != 1 || sum_y != 1) bad.push_back("anchor coordinates do not sum to one");
  if (f_value(rep.px, rep.py, rep.anchor_x, rep.anchor_y) != rep.e_max) bad.push_back("f(anchor) != e_max");

  if (!rep.is_case_a()) {
    for (int i : rep.active) {
      const auto k = static_cast<std::size_t>(i - 1);
      if (rep.px[k] * rep.anchor_x[k] != rep.py[k] * rep.anchor_y[k]) {
        bad.push_back("p^X a^X != p^Y a^Y on I");
        break;
      }
    }
  }
  if (const auto* c = std::get_if<CaseB1Constants>(&rep.constants)) {
    for (const Rational* v : {&c->s_x, &c->t_x, &c->s_y, &c->t_y}) {
      if (*v < 0 || *v > 1) bad.push_back("CaseB1 constant outside [0,1]");
    }
  }
  if (const auto* c = std::get_if<CaseB2Constants>(&rep.constants)) {
    for (int i : rep.active) {
      const auto k = static_cast<std::size_t>(i - 1);
      if (std::abs(to_double(c->s / rep.px[k] + c->t / rep.py[k] - 1)) > kTolerances.span_residual) {
        bad.push_back("CaseB2 span residual above tolerance");
        break;
      }
    }
  }
  return bad;
}

Truncation truncate_alphabet(const Pmf& px, const Pmf& py) {
  if (px.size() != py.size()) throw Error(ErrorKind::AlphabetMismatch, "pmfs differ in length");
  const std::size_t big_m = px.size();
  const Rational e = compute_emax(px.probs(), py.probs()).e_max;
  for (std::size_t cut = 2; cut <= big_m; ++cut) {
    Rational tail_x = 0, tail_y = 0;
    for (std::size_t i = cut - 1; i < big_m; ++i) {
      tail_x += px[i];
      tail_y += py[i];
    }
    if (!(tail_x < e && tail_y < e)) continue;
    auto bucket = [&](const Pmf& p, const Rational& tail) {
      std::vector<Rational> v(p.probs().begin(), p.probs().begin() + static_cast<std::ptrdiff_t>(cut - 1));
      v.push_back(tail);
      if (p.exact()) return validate_pmf(std::move(v));
      std::vector<double> d;
      for (const auto& q : v) d.push_back(to_double(q));
      return validate_pmf(std::span<const double>(d));
    };
    return Truncation{static_cast<int>(cut), e, Instance(bucket(px, tail_x), bucket(py, tail_y))};
  }
  throw Error(ErrorKind::NoValidCut, "no cut has both tails below e_max");
}

TwoLetterRule two_letter_rule(const Instance& inst) {
  if (inst.m() != 2) throw Error(ErrorKind::BadInput, "two_letter_rule needs m = 2");
  const Rational& x1 = inst.px()[0];
  const Rational& y1 = inst.py()[0];
  const Rational& x2 = inst.px()[1];
  const Rational& y2 = inst.py()[1];
  TwoLetterRule r;
  if (x1 == y1) {
    r.limit_case = LimitCase::CaseB1;
    r.e_max = std::max(x1, x2);
    return r;
  }
  const Rational half(1, 2);
  if (min_of(x1, y1) < half && half < std::max(x1, y1)) {
    r.limit_case = LimitCase::CaseB2;
    r.e_max = x1 * y1 + x2 * y2;
    return r;
  }
  const Rational a = min_of(x1, y1), b = min_of(x2, y2);
  r.e_max = std::max(a, b);
  // The achiever decides the direction.
  const bool first = a >= b;
  const bool x_limited = first ? x1 < y1 : x2 < y2;
  r.limit_case = x_limited ? LimitCase::CaseA : LimitCase::CaseASymmetric;
  return r;
}

}  // namespace lci
