#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "lci/analysis.hpp"
#include "lci/errors.hpp"
#include "lci/harness.hpp"
#include "lci/limit_sampler.hpp"
#include "oracles.hpp"

using lci::Rational;

namespace {

lci::Pmf pmf(std::initializer_list<std::pair<long, long>> v) {
  std::vector<Rational> out;
  for (auto [a, b] : v) out.emplace_back(a, b);
  return lci::validate_pmf(std::move(out));
}

const lci::Instance kCaseA(pmf({{3, 8}, {3, 8}, {1, 4}}), pmf({{1, 2}, {3, 8}, {1, 8}}));
const lci::Instance kCaseB1(pmf({{1, 3}, {1, 3}, {2, 9}, {1, 9}}), pmf({{1, 3}, {1, 3}, {1, 9}, {2, 9}}));
const lci::Instance kCaseB2(pmf({{2, 3}, {1, 6}, {1, 6}}), pmf({{1, 6}, {2, 3}, {1, 6}}));
const lci::Instance kUniform2(lci::uniform_pmf(2), lci::uniform_pmf(2));

lci::SamplerOptions opts(std::size_t reps, std::size_t steps = 256, int r = 16) {
  lci::SamplerOptions o;
  o.reps = reps;
  o.path_steps = steps;
  o.grid_r = r;
  return o;
}

// Hand-built 4-step path over three letters.
lci::BrownianGrid hand_path() {
  lci::BrownianGrid g;
  g.steps = 4;
  g.x = {{0, 1, 2, 0, -1}, {0, -0.5, -1, 0.5, 1.5}, {0, -0.5, -1, -0.5, -0.5}};
  g.y = {{0, 0.25, 0.5, 0.75, 1}, {0, 0, 0, 0, 0}, {0, -0.25, -0.5, -0.75, -1}};
  return g;
}

lci::BrownianGrid flat(std::size_t m) {
  lci::BrownianGrid g;
  g.steps = 4;
  g.x.assign(m, std::vector<double>(5, 0.0));
  g.y = g.x;
  return g;
}

}  // namespace

TEST(EvalZa, HandBuiltPath) {
  const auto rep = lci::classify_case(kCaseA);
  const auto g = hand_path();
  // All mass on letter 1: G_1(1).
  EXPECT_DOUBLE_EQ(lci::eval_za(g, rep, {{1, 0, 0}, {}}), -1.0);
  // Split at 1/2: G_1(1/2) + G_2(1) - G_2(1/2).
  EXPECT_DOUBLE_EQ(lci::eval_za(g, rep, {{Rational(1, 2), Rational(1, 2), 0}, {}}), 2.0 + 1.5 + 1.0);
  // Split at 3/8 interpolates between steps 1 and 2.
  EXPECT_DOUBLE_EQ(lci::eval_za(g, rep, {{Rational(3, 8), Rational(5, 8), 0}, {}}), 1.5 + (1.5 + 0.75));
  EXPECT_EQ(lci::eval_za(flat(3), rep, {{Rational(1, 4), Rational(3, 4), 0}, {}}), 0.0);
}

TEST(EvalZa, PointOutsideJ) {
  const auto rep = lci::classify_case(kCaseA);
  try {
    lci::eval_za(hand_path(), rep, {{0, 0, 1}, {}});
    FAIL();
  } catch (const lci::Error& e) {
    EXPECT_EQ(e.kind(), lci::ErrorKind::PointNotInJ);
  }
}

TEST(EvalZb, FlatPathAndSameDistribution) {
  const auto rep = lci::classify_case(kUniform2);
  const lci::GridPoint p{{Rational(1, 4), Rational(3, 4)}, {Rational(1, 4), Rational(3, 4)}};
  EXPECT_EQ(lci::eval_zb(flat(2), rep, p), 0.0);
  lci::BrownianGrid g;
  g.steps = 4;
  g.x = {{0, 1, 2, 3, 4}, {0, -1, -2, -3, -4}};
  g.y = {{0, -1, -3, -1, 0}, {0, 2, 1, 0, 0}};
  const lci::GridPoint q{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}};
  // q: S^X = 2 + (-4 + 2) = 0, S^Y = -3 + (0 - 1) = -4.
  EXPECT_DOUBLE_EQ(lci::eval_zb(g, rep, q), -4.0);
  // p: S^X = 1 + (-4 + 1) = -2, S^Y = -1 + (0 - 2) = -3.
  EXPECT_DOUBLE_EQ(lci::eval_zb(g, rep, p), -3.0);
}

TEST(EvalZb, CaseB2IsLinear) {
  const auto rep = lci::classify_case(kCaseB2);
  const auto point = lci::grid_K(rep, 8).points.at(0);
  const auto g = hand_path();
  const auto& c = std::get<lci::CaseB2Constants>(rep.constants);
  // lambda^X = (1/5, 4/5), lambda^Y = (4/5, 1/5).
  const double vx1 = lci::path_at(g.x[0], 0.2), vx2 = g.x[1][4] - lci::path_at(g.x[1], 0.2);
  const double vy1 = lci::path_at(g.y[0], 0.8), vy2 = g.y[1][4] - lci::path_at(g.y[1], 0.8);
  const double s = lci::to_double(c.s), t = lci::to_double(c.t);
  const double expected = s * (vx1 / (2.0 / 3) + vx2 / (1.0 / 6)) + t * (vy1 / (1.0 / 6) + vy2 / (2.0 / 3));
  EXPECT_NEAR(lci::eval_zb(g, rep, point), expected, 1e-12);
}

TEST(EvalZb, PointOutsideK) {
  const auto rep = lci::classify_case(kCaseB2);
  try {
    lci::eval_zb(hand_path(), rep, {{Rational(1, 2), Rational(1, 2), 0}, {Rational(1, 2), Rational(1, 2), 0}});
    FAIL();
  } catch (const lci::Error& e) {
    EXPECT_EQ(e.kind(), lci::ErrorKind::PointNotInK);
  }
  try {
    lci::eval_zb(hand_path(), lci::classify_case(kCaseA), {{1, 0, 0}, {1, 0, 0}});
    FAIL();
  } catch (const lci::Error& e) {
    EXPECT_EQ(e.kind(), lci::ErrorKind::WrongCase);
  }
}

TEST(SampleLimit, SingleActiveLetterMean) {
  const auto p = lci::validate_pmf(std::vector<Rational>{Rational(3, 5), Rational(2, 5)});
  const auto rep = lci::classify_case(lci::Instance(p, p));
  ASSERT_EQ(rep.active, std::vector<int>{1});
  const auto set = lci::sample_limit(rep, opts(20000), {2024, 0});
  const double target = -std::sqrt(0.24) / std::sqrt(std::numbers::pi);
  const double se = lci::sample_sd(set.samples) / std::sqrt(20000.0);
  EXPECT_NEAR(lci::mean(set.samples), target, 3 * se);
}

TEST(SampleLimit, CaseB2GaussianVariance) {
  const auto rep = lci::classify_case(kCaseB2);
  const auto point = lci::grid_K(rep, 4).points.at(0);
  const auto& c = std::get<lci::CaseB2Constants>(rep.constants);
  std::vector<Rational> wx(3, 0), wy(3, 0);
  for (int i : rep.active) {
    const auto k = static_cast<std::size_t>(i - 1);
    wx[k] = c.s / rep.px[k];
    wy[k] = c.t / rep.py[k];
  }
  const double var = lci::to_double(lci::testing::linear_functional_variance(rep, point, wx, wy));
  // Breakpoints 1/5 and 4/5 sit on the 10-step grid, so the discretization is exact.
  const auto set = lci::sample_limit(rep, opts(100000, 10, 4), {7, 0});
  const double sd = lci::sample_sd(set.samples);
  EXPECT_NEAR(sd * sd, var, 0.05 * var);
  EXPECT_NEAR(lci::mean(set.samples), 0.0, 4 * std::sqrt(var / 100000));
}

TEST(SampleLimit, NestedGridsNeverLose) {
  for (const auto* inst : {&kCaseA, &kCaseB1, &kUniform2}) {
    const auto rep = lci::classify_case(*inst);
    const auto coarse = lci::sampler_grid(rep, 6);
    const auto fine = lci::sampler_grid(rep, 12);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto g = lci::sample_brownian(*inst, 240, {s, 5});
      ASSERT_GE(lci::grid_max(g, rep, fine), lci::grid_max(g, rep, coarse) - 1e-12);
    }
  }
}

TEST(SampleLimit, RefinementNeverLowersSamples) {
  for (const auto* inst : {&kCaseA, &kCaseB1}) {
    const auto rep = lci::classify_case(*inst);
    auto o = opts(200, 512, 8);
    const auto plain = lci::sample_limit(rep, o, {3, 3});
    o.refine_passes = 2;
    const auto refined = lci::sample_limit(rep, o, {3, 3});
    for (std::size_t i = 0; i < plain.samples.size(); ++i) ASSERT_GE(refined.samples[i], plain.samples[i]);
  }
}

TEST(SampleLimit, ReproducibleAcrossThreads) {
  const auto rep = lci::classify_case(kCaseB1);
  auto o = opts(300);
  const auto a = lci::sample_limit(rep, o, {99, 1});
  const auto b = lci::sample_limit(rep, o, {99, 1});
  o.threads = 3;
  const auto c = lci::sample_limit(rep, o, {99, 1});
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.samples, c.samples);
  const auto d = lci::sample_limit(rep, opts(300), {99, 2});
  EXPECT_NE(a.samples, d.samples);
}

TEST(SampleLimit, CaseAIgnoresYPath) {
  const auto rep = lci::classify_case(kCaseA);
  auto o = opts(200);
  const auto a = lci::sample_limit(rep, o, {5, 0});
  o.y_rng = lci::RngConfig{123456, 7};
  const auto b = lci::sample_limit(rep, o, {5, 0});
  EXPECT_EQ(a.samples, b.samples);
  // Case b does read the Y path.
  const auto rb = lci::classify_case(kCaseB1);
  auto ob = opts(200);
  const auto c = lci::sample_limit(rb, ob, {5, 0});
  ob.y_rng = lci::RngConfig{123456, 7};
  EXPECT_NE(c.samples, lci::sample_limit(rb, ob, {5, 0}).samples);
}

TEST(SampleLimitBlocks, IdentityMatchesPlain) {
  for (const auto* inst : {&kCaseA, &kCaseB1, &kCaseB2}) {
    const auto plain = lci::sample_limit(lci::classify_case(*inst), opts(500), {8, 8});
    const auto rep = lci::blocks_analysis(*inst, lci::BlockOrder::identity(static_cast<int>(inst->m())));
    const auto blocks = lci::sample_limit_blocks(rep, opts(500), {8, 8});
    EXPECT_EQ(plain.samples, blocks.samples);
    EXPECT_EQ(lci::ks_two_sample(plain.samples, blocks.samples).statistic, 0.0);
  }
}

TEST(SampleLimitBlocks, TwoOneTwoMatchesDisplay) {
  const auto rep = lci::blocks_analysis(kUniform2, lci::BlockOrder({2, 1, 2}, 2));
  const int r = 12;
  const auto grid = lci::grid_K(rep, r);
  const auto o = opts(50, 240, r);
  const auto set = lci::sample_limit_blocks(rep, o, {31, 0});
  for (std::size_t i = 0; i < set.samples.size(); ++i) {
    // Rebuild the replicate's paths and evaluate the display with B = G / sqrt(1/4).
    const auto base = lci::RngConfig{31, 0}.substream(i);
    const std::vector<bool> all{true, true};
    const auto gx = lci::sample_brownian_side({0.5, 0.5}, all, 240, base.substream(0));
    const auto gy = lci::sample_brownian_side({0.5, 0.5}, all, 240, base.substream(1));
    double best = -1e300;
    for (int a = 0; a <= r; ++a) {
      for (int b = 0; a + b <= r; ++b) {
        const double t1 = static_cast<double>(a) / r, t2 = static_cast<double>(a + b) / r;
        auto side = [&](const std::vector<std::vector<double>>& g) {
          auto bm = [&](int letter, double t) { return lci::path_at(g[static_cast<std::size_t>(letter - 1)], t) / 0.5; };
          return bm(2, t1) + bm(1, t2) - bm(1, t1) + bm(2, 1.0) - bm(2, t2);
        };
        best = std::max(best, 0.5 * std::min(side(gx), side(gy)));
      }
    }
    ASSERT_NEAR(set.samples[i], best, 1e-12) << "replicate " << i;
  }
  EXPECT_EQ(grid.points.size(), static_cast<std::size_t>((r + 1) * (r + 2) / 2));
}

TEST(SampleLimitBlocks, BlockGaussianStd) {
  const lci::Instance inst(pmf({{1, 3}, {2, 3}}), pmf({{1, 4}, {3, 4}}));
  const auto rep = lci::blocks_analysis(inst, lci::BlockOrder({1, 2}, 2));
  const auto set = lci::sample_limit_blocks(rep, opts(100000), {12, 0});
  EXPECT_NEAR(lci::sample_sd(set.samples), std::sqrt(2.0) / 3, 0.03 * std::sqrt(2.0) / 3);
  EXPECT_EQ(set.blocks, (std::vector<lci::Letter>{1, 2}));
}

TEST(LimitCsv, RoundTripIsExact) {
  const auto rep = lci::blocks_analysis(kUniform2, lci::BlockOrder({2, 1, 2}, 2));
  auto o = opts(100, 64, 8);
  o.refine_passes = 1;
  const auto set = lci::sample_limit_blocks(rep, o, {77, 4});
  std::stringstream buf;
  lci::write_csv(buf, set);
  const auto back = lci::read_csv(buf);
  EXPECT_EQ(back.samples, set.samples);
  EXPECT_EQ(back.limit_case, set.limit_case);
  EXPECT_EQ(back.path_steps, set.path_steps);
  EXPECT_EQ(back.grid_r, set.grid_r);
  EXPECT_EQ(back.reps, set.reps);
  EXPECT_EQ(back.refine_passes, set.refine_passes);
  EXPECT_EQ(back.rng, set.rng);
  EXPECT_EQ(back.blocks, set.blocks);
}

TEST(LimitCsv, RejectsGarbage) {
  std::stringstream buf("# case=CaseA\nsample\nnot-a-number\n");
  EXPECT_THROW(lci::read_csv(buf), lci::Error);
}
