#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lci/limit_sampler.hpp"
#include "lci/pmf.hpp"
#include "lci/rational.hpp"
#include "lci/rng.hpp"

namespace lci {

// FNV-1a over the exact fraction strings of both pmfs.
std::uint64_t instance_hash(const Instance& inst);

// (length - n e_max) / sqrt(n), with the numerator formed exactly.
double zn_value(std::size_t length, std::size_t n, const Rational& e_max);

// Replicate k draws x from rng.substream(k).substream(0) and y from
// rng.substream(k).substream(1).
struct EmpiricalZSet {
  std::vector<double> samples;
  std::vector<std::size_t> lengths;
  std::size_t n = 0;
  std::size_t reps = 0;
  RngConfig rng;
  std::uint64_t instance_hash = 0;
  Rational e_max;
};

EmpiricalZSet simulate_zn(const Instance& inst, std::size_t n, std::size_t reps, const RngConfig& rng,
                          unsigned threads = 1);
EmpiricalZSet simulate_zn(const Instance& inst, const Rational& e_max, std::size_t n, std::size_t reps,
                          const RngConfig& rng, unsigned threads = 1);

// LCI length of replicate k, recomputed from the logged stream.
std::size_t replay_length(const Instance& inst, std::size_t n, const RngConfig& rng, std::size_t k);

struct KsResult {
  double statistic = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double p_value = 1.0;
};

// Kolmogorov tail Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_q(double x);

// Two-sample statistic sup |F_a - F_b| with the asymptotic p-value
// Q((sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D), ne = n m / (n + m). Throws Empty.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// c(alpha) sqrt((n + m) / (n m)) with c(alpha) = sqrt(-ln(alpha / 2) / 2).
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

struct ConvergeRow {
  std::size_t n = 0;
  double mean_zn = 0.0;
  double sd_zn = 0.0;
  KsResult ks;
};

struct ConvergeReport {
  std::vector<ConvergeRow> rows;
  LimitSampleSet limit;
  // KS distance nonincreasing along the n-list.
  bool nonincreasing = true;
};

// Limit samples use rng.substream(0); the k-th length uses rng.substream(k + 1).
ConvergeReport converge(const Instance& inst, const std::vector<std::size_t>& ns, std::size_t reps,
                        const SamplerOptions& limit_options, const RngConfig& rng);

double mean(std::span<const double> v);
double sample_sd(std::span<const double> v);

}  // namespace lci
