#pragma once

#include <cstddef>
#include <vector>

#include "lci/pmf.hpp"
#include "lci/rng.hpp"

namespace lci {

// Discretized centered count-process limits on t_k = k/N, k = 0..N. Letter i
// (0-based) of a side holds N+1 values starting at 0; letters that were not
// generated hold an empty vector. Per-step increments have covariance
// p_i (delta_ij - p_j) / N, so the letters of a fully generated side sum to zero.
struct BrownianGrid {
  std::size_t steps = 0;
  std::vector<std::vector<double>> x;
  std::vector<std::vector<double>> y;
};

// Linear interpolation of a path at t in [0, 1].
double path_at(const std::vector<double>& path, double t);

// One side. Only letters with wanted[i] set are generated; the others enter
// through a single aggregated Gaussian, which leaves the joint law of the
// generated letters unchanged.
std::vector<std::vector<double>> sample_brownian_side(const std::vector<double>& p,
                                                      const std::vector<bool>& wanted,
                                                      std::size_t steps, const RngConfig& rng);

// Both sides with all letters; X uses rng.substream(0) and Y rng.substream(1).
BrownianGrid sample_brownian(const Instance& inst, std::size_t steps, const RngConfig& rng);

}  // namespace lci
