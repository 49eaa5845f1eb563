// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "lci/analysis.hpp"
#include "lci/errors.hpp"
#include "lci/exact_lci.hpp"
#include "lci/harness.hpp"
#include "lci/limit_sampler.hpp"
#include "lci/m_functional.hpp"
#include "oracles.hpp"

using lci::LimitCase;
using lci::Rational;
namespace t = lci::testing;

namespace {

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

lci::Pmf pmf(std::initializer_list<std::pair<long, long>> v) {
  std::vector<Rational> out;
  for (auto [a, b] : v) out.emplace_back(a, b);
  return lci::validate_pmf(std::move(out));
}

const lci::Instance kCaseA(pmf({{3, 8}, {3, 8}, {1, 4}}), pmf({{1, 2}, {3, 8}, {1, 8}}));
const lci::Instance kCaseB1(pmf({{1, 3}, {1, 3}, {2, 9}, {1, 9}}), pmf({{1, 3}, {1, 3}, {1, 9}, {2, 9}}));
const lci::Instance kCaseB2(pmf({{2, 3}, {1, 6}, {1, 6}}), pmf({{1, 6}, {2, 3}, {1, 6}}));
const lci::Instance kUniform2(lci::uniform_pmf(2), lci::uniform_pmf(2));

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome exact_values() {
  std::string why;
  auto need = [&](bool ok, const char* what) {
    if (!ok) why += std::string(why.empty() ? "" : "; ") + what;
  };
  const auto a = lci::classify_case(kCaseA);
  need(lci::compute_emax(kCaseA).e_max == Rational(3, 8), "Case a e_max");
  need(a.e_max == Rational(3, 8) && a.limit_case == LimitCase::CaseA, "Case a tag");
  need(a.active == std::vector<int>{1, 2}, "Case a I");
  const auto b1 = lci::classify_case(kCaseB1);
  need(lci::compute_emax(kCaseB1).e_max == Rational(1, 3), "Case b1 e_max");
  need(b1.limit_case == LimitCase::CaseB1 && b1.e_max == Rational(1, 3), "Case b1 tag");
  const auto b2 = lci::classify_case(kCaseB2);
  need(lci::compute_emax(kCaseB2).e_max == Rational(4, 15), "Case b2 e_max");
  need(b2.limit_case == LimitCase::CaseB2, "Case b2 tag");
  if (const auto* c = std::get_if<lci::CaseB2Constants>(&b2.constants)) {
    need(c->s == Rational(2, 15) && c->t == Rational(2, 15), "Case b2 s,t");
  } else {
    need(false, "Case b2 constants missing");
  }
  return {why.empty(), why.empty() ? "3/8 CaseA I={1,2}; 1/3 CaseB1; 4/15 CaseB2 s=t=2/15" : why};
}

// The three bullets for two letters, applied as written.
struct Bullet {
  int index;
  LimitCase tag;  // CaseA stands for "Case a or its symmetric"
  Rational e_max;
};

Bullet written_bullets(const lci::Instance& inst) {
  const Rational x1 = inst.px()[0], y1 = inst.py()[0];
  const Rational x2 = 1 - x1, y2 = 1 - y1;
  const Rational half(1, 2);
  if (x1 == y1) return {1, LimitCase::CaseB1, std::max(x1, x2)};
  const Rational lo = std::min(x1, y1), hi = std::max(x1, y1);
  if (lo < half && half < hi) {
    return {2, LimitCase::CaseA, std::max(std::min(x1, y1), std::min(x2, y2))};
  }
  return {3, LimitCase::CaseB2, x1 * y1 + x2 * y2};
}

std::vector<lci::Instance> two_letter_instances() {
  std::vector<lci::Instance> out;
  std::mt19937_64 gen(20261016);
  std::uniform_int_distribution<long> k(1, 19);
  for (int i = 0; i < 500; ++i) {
    const long a = k(gen);
    // Every fifth instance shares the first mass so the first bullet is exercised.
    const long b = i % 5 == 0 ? a : k(gen);
    out.emplace_back(pmf({{a, 20}, {20 - a, 20}}), pmf({{b, 20}, {20 - b, 20}}));
  }
  return out;
}

Outcome two_letter_cornering() {
  int agree = 0, tag_off = 0, value_off = 0;
  int by_bullet[4] = {0, 0, 0, 0}, off_by_bullet[4] = {0, 0, 0, 0};
  std::string example;
  for (const auto& inst : two_letter_instances()) {
    const auto rep = lci::classify_case(inst);
    const auto bullet = written_bullets(inst);
    ++by_bullet[bullet.index];
    const bool tag_ok = bullet.tag == LimitCase::CaseA ? rep.is_case_a() : rep.limit_case == bullet.tag;
    const bool value_ok = lci::compute_emax(inst).e_max == bullet.e_max;
    if (tag_ok && value_ok) {
      ++agree;
      continue;
    }
    tag_off += !tag_ok;
    value_off += !value_ok;
    ++off_by_bullet[bullet.index];
    if (example.empty()) {
      example = fmt("e.g. pX1=%s pY1=%s: bullet %d says %s e=%s, exact analysis gives %s e=%s (e1=%s)",
                    lci::to_fraction_string(inst.px()[0]).c_str(), lci::to_fraction_string(inst.py()[0]).c_str(),
                    bullet.index, std::string(lci::to_string(bullet.tag)).c_str(),
                    lci::to_fraction_string(bullet.e_max).c_str(), std::string(lci::to_string(rep.limit_case)).c_str(),
                    lci::to_fraction_string(rep.e_max).c_str(), lci::to_fraction_string(rep.e1).c_str());
    }
  }
  return {agree == 500,
          fmt("%d/500 agree; tag mismatches %d, e_max mismatches %d; disagreements per bullet 1/2/3: %d/%d, %d/%d, %d/%d. %s",
              agree, tag_off, value_off, off_by_bullet[1], by_bullet[1], off_by_bullet[2], by_bullet[2],
              off_by_bullet[3], by_bullet[3], example.c_str())};
}

std::string corrected_rule_note() {
  int agree = 0;
  for (const auto& inst : two_letter_instances()) {
    const auto rep = lci::classify_case(inst);
    const auto rule = lci::two_letter_rule(inst);
    const auto grid = lci::emax_grid_oracle(inst, 400);
    const bool oracle_ok = grid <= lci::to_double(rule.e_max) + 1e-12 && lci::to_double(rule.e_max) - grid <= 4.0 / 400;
    agree += rep.limit_case == rule.limit_case && rep.e_max == rule.e_max && oracle_ok;
  }
  return fmt("with the interval conditions of bullets 2 and 3 exchanged: %d/500 agree on tag and exact e_max, "
             "and the grid oracle (r=400) confirms every e_max",
             agree);
}

Outcome dp_oracles() {
  std::mt19937_64 gen(3);
  int bad_brute = 0, bad_comp = 0;
  for (int k = 0; k < 500; ++k) {
    const int m = 2 + k % 2;
    const std::size_t nx = gen() % 9, ny = gen() % 9;
    const auto x = t::random_word(nx, m, gen());
    const auto y = t::random_word(ny, m, gen());
    bad_brute += lci::lci_length(x, y) != lci::lci_bruteforce(x, y);
    bad_brute += lci::lci_length_dp(x, y) != lci::lci_bruteforce(x, y);
  }
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + gen() % 8;
    const auto x = t::random_word(n, 3, gen());
    const auto y = t::random_word(n, 3, gen());
    bad_comp += t::composition_max(x, y) != lci::lci_length(x, y);
  }
  return {bad_brute == 0 && bad_comp == 0,
          fmt("DP vs brute force: %d mismatches in 500 pairs; compositions vs DP: %d mismatches in 100 pairs", bad_brute,
              bad_comp)};
}

Outcome m_oracle() {
  double worst = 0.0;
  int draws = 0;
  for (const auto* inst : {&kCaseB1, &kCaseB2}) {
    const auto rep = lci::classify_case(*inst);
    std::mt19937_64 gen(41);
    std::uniform_int_distribution<int> k(-40, 40);
    for (int d = 0; d < 1000; ++d) {
      lci::Perturbation nu{std::vector<double>(rep.slots(), 0.0), std::vector<double>(rep.slots(), 0.0)};
      for (int i : rep.active) {
        nu.nu_x[static_cast<std::size_t>(i - 1)] = k(gen) / 10.0;
        nu.nu_y[static_cast<std::size_t>(i - 1)] = k(gen) / 10.0;
      }
      worst = std::max(worst, std::abs(lci::m_closed(rep, nu) - lci::m_lp_oracle(rep, nu).value));
      ++draws;
    }
  }
  return {worst <= 1e-8, fmt("%d perturbations, max |closed - LP| = %.3g", draws, worst)};
}

Outcome single_letter_mean() {
  const auto p = lci::validate_pmf(std::vector<Rational>{Rational(3, 5), Rational(2, 5)});
  const lci::Instance inst(p, p);
  const auto rep = lci::classify_case(inst);
  const double target = -std::sqrt(0.24) / std::sqrt(std::numbers::pi);
  lci::SamplerOptions o;
  o.reps = 100000;
  o.threads = threads();
  const auto lim = lci::sample_limit(rep, o, {505, 0});
  const double m1 = lci::mean(lim.samples), se1 = lci::sample_sd(lim.samples) / std::sqrt(1e5);
  const auto z = lci::simulate_zn(inst, rep.e_max, 20000, 2000, {505, 1}, threads());
  const double m2 = lci::mean(z.samples), se2 = lci::sample_sd(z.samples) / std::sqrt(2000.0);
  const bool ok = std::abs(m1 - target) <= 3 * se1 && std::abs(m2 - target) <= 3 * se2;
  return {ok, fmt("target %.5f; limit mean %.5f (%.2f SE); Z_n mean at n=20000 %.5f (%.2f SE)", target, m1,
                  (m1 - target) / se1, m2, (m2 - target) / se2)};
}

Outcome block_gaussian() {
  const lci::Instance inst(pmf({{1, 3}, {2, 3}}), pmf({{1, 4}, {3, 4}}));
  const auto rep = lci::blocks_analysis(inst, lci::BlockOrder({1, 2}, 2));
  lci::SamplerOptions o;
  o.reps = 100000;
  o.threads = threads();
  const auto s = lci::sample_limit_blocks(rep, o, {606, 0});
  const double sd = lci::sample_sd(s.samples), target = std::sqrt(2.0) / 3;
  return {rep.limit_case == LimitCase::CaseA && std::abs(sd - target) <= 0.03 * target,
          fmt("%s I={%d}; sd %.5f vs %.5f (rel. error %.2f%%)", std::string(lci::to_string(rep.limit_case)).c_str(),
              rep.active.empty() ? 0 : rep.active[0], sd, target, 100 * std::abs(sd - target) / target)};
}

Outcome distributional_convergence() {
  lci::SamplerOptions o;
  o.reps = 10000;
  o.path_steps = 4096;
  o.grid_r = 64;
  o.threads = threads();
  const auto rep = lci::classify_case(kUniform2);
  const auto lim = lci::sample_limit(rep, o, {707, 0});
  const auto z_small = lci::simulate_zn(kUniform2, rep.e_max, 500, 2000, {707, 1}, threads());
  const auto z_big = lci::simulate_zn(kUniform2, rep.e_max, 20000, 2000, {707, 2}, threads());
  const double d_small = lci::ks_two_sample(z_small.samples, lim.samples).statistic;
  const double d_big = lci::ks_two_sample(z_big.samples, lim.samples).statistic;
  return {d_big <= 0.08 && d_big < d_small,
          fmt("KS n=500: %.4f, n=20000: %.4f (threshold 0.08); means Z_500 %.4f, Z_20000 %.4f, limit %.4f", d_small,
              d_big, lci::mean(z_small.samples), lci::mean(z_big.samples), lci::mean(lim.samples))};
}

Outcome block_mean_invariance() {
  std::mt19937_64 gen(8);
  int bad_e = 0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t m = 2 + k % 3;
    const lci::Instance inst(t::random_pmf(m, 48, gen()), t::random_pmf(m, 48, gen()));
    // Surjection: a shuffled copy of every letter plus up to three extra slots.
    std::vector<lci::Letter> slots;
    for (std::size_t i = 1; i <= m; ++i) slots.push_back(static_cast<lci::Letter>(i));
    for (std::size_t extra = gen() % 4; extra > 0; --extra) slots.push_back(static_cast<lci::Letter>(1 + gen() % m));
    std::shuffle(slots.begin(), slots.end(), gen);
    try {
      const auto rep = lci::blocks_analysis(inst, lci::BlockOrder(slots, static_cast<int>(m)));
      bad_e += rep.e_max != lci::compute_emax(inst).e_max;
    } catch (const lci::Error&) {
      ++bad_e;
    }
  }
  int bad_w = 0;
  for (int k = 0; k < 200; ++k) {
    const int m = 2 + k % 3;
    const auto x = t::random_word(1 + gen() % 40, m, gen());
    const auto y = t::random_word(1 + gen() % 40, m, gen());
    bad_w += lci::lc_blocks_length(x, y, lci::BlockOrder::identity(m)) != lci::lci_length(x, y);
  }
  return {bad_e == 0 && bad_w == 0,
          fmt("e_max mismatches %d/50 block orders; identity blocks vs LCI mismatches %d/200", bad_e, bad_w)};
}

Outcome permutation_invariance() {
  lci::SamplerOptions o;
  o.reps = 10000;
  o.threads = threads();
  const auto a = lci::sample_limit_blocks(lci::blocks_analysis(kUniform2, lci::BlockOrder({1, 2}, 2)), o, {909, 0});
  const auto b = lci::sample_limit_blocks(lci::blocks_analysis(kUniform2, lci::BlockOrder({2, 1}, 2)), o, {909, 1});
  const auto ks = lci::ks_two_sample(a.samples, b.samples);
  const double crit = lci::ks_critical_value(10000, 10000, 0.001);
  return {ks.statistic < crit, fmt("KS %.4f vs critical %.4f (p = %.3g)", ks.statistic, crit, ks.p_value)};
}

// Same comparison with the lambda grid as fine as the path (r = N = 4096).
std::string fine_grid_note() {
  lci::SamplerOptions o;
  o.reps = 10000;
  o.path_steps = 4096;
  o.grid_r = 4096;
  o.threads = threads();
  const auto rep = lci::classify_case(kUniform2);
  const auto lim = lci::sample_limit(rep, o, {707, 0});
  const auto z_small = lci::simulate_zn(kUniform2, rep.e_max, 500, 2000, {707, 1}, threads());
  const auto z_big = lci::simulate_zn(kUniform2, rep.e_max, 20000, 2000, {707, 2}, threads());
  return fmt("with grid r=4096 instead of 64: KS n=500: %.4f, n=20000: %.4f, limit mean %.4f "
             "(the r=64 grid max sits below the continuous max)",
             lci::ks_two_sample(z_small.samples, lim.samples).statistic,
             lci::ks_two_sample(z_big.samples, lim.samples).statistic, lci::mean(lim.samples));
}

lci::Instance twenty_letter_instance() {
  auto build = [](Rational a, Rational b, Rational c) {
    std::vector<Rational> v{a, b, c};
    const Rational tail = 1 - a - b - c;
    Rational norm = 0;
    for (int i = 4; i <= 20; ++i) norm += Rational(1, 1L << (i - 3));
    for (int i = 4; i <= 20; ++i) v.push_back(tail * Rational(1, 1L << (i - 3)) / norm);
    return lci::validate_pmf(std::move(v));
  };
  return lci::Instance(build(Rational(3, 10), Rational(3, 10), Rational(3, 20)),
                       build(Rational(2, 5), Rational(1, 5), Rational(3, 20)));
}

Outcome truncation() {
  const auto full = twenty_letter_instance();
  const auto tr = lci::truncate_alphabet(full.px(), full.py());
  const auto rep_full = lci::classify_case(full);
  const auto rep_cut = lci::classify_case(tr.bucketed);
  lci::SamplerOptions o;
  o.reps = 10000;
  o.threads = threads();
  const auto a = lci::sample_limit(rep_full, o, {1010, 0});
  const auto b = lci::sample_limit(rep_cut, o, {1010, 1});
  const auto ks = lci::ks_two_sample(a.samples, b.samples);
  const double crit = lci::ks_critical_value(10000, 10000, 0.001);
  const bool same = rep_full.e_max == rep_cut.e_max && rep_full.limit_case == rep_cut.limit_case &&
                    rep_full.active == rep_cut.active;
  return {same && ks.statistic < crit,
          fmt("cut m=%d, e_max %s, %s I size %zu; KS %.4f vs critical %.4f", tr.cut,
              lci::to_fraction_string(tr.e_max).c_str(), std::string(lci::to_string(rep_full.limit_case)).c_str(),
              rep_full.active.size(), ks.statistic, crit)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "exact analysis values", 1, exact_values},
      {2, "two-letter cornering rule", 5, two_letter_cornering},
      {3, "DP oracle equivalence", 60, dp_oracles},
      {4, "second-order functional: closed form vs LP", 60, m_oracle},
      {5, "single active letter mean", 300, single_letter_mean},
      {6, "block Gaussian standard deviation", 120, block_gaussian},
      {7, "distributional convergence (KS)", 600, distributional_convergence},
      {8, "block invariance of the mean", 30, block_mean_invariance},
      {9, "permutation invariance (KS)", 300, permutation_invariance},
      {10, "truncation consistency (KS)", 300, truncation},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      out.pass = false;
      out.detail += fmt(" [over time budget %.0f s]", c.budget_s);
    }
    failed += !out.pass;
    std::printf("%s criterion %d: %s (%.2f s): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs, out.detail.c_str());
    if (c.id == 2) std::printf("     note: %s\n", corrected_rule_note().c_str());
    if (c.id == 7) std::printf("     note: %s\n", fine_grid_note().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
