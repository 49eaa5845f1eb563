#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lci/analysis.hpp"
#include "lci/brownian.hpp"
#include "lci/m_functional.hpp"
#include "lci/polytope_grid.hpp"
#include "lci/rng.hpp"

namespace lci {

struct SamplerOptions {
  std::size_t path_steps = 4096;
  int grid_r = 64;
  std::size_t reps = 1000;
  // Each pass halves the step and evaluates the neighbours of the current best.
  int refine_passes = 0;
  unsigned threads = 1;
  // Overrides the Y-path streams (replicate k uses y_rng->substream(k)).
  std::optional<RngConfig> y_rng;
};

struct LimitSampleSet {
  std::vector<double> samples;
  LimitCase limit_case = LimitCase::CaseB1;
  std::size_t path_steps = 0;
  int grid_r = 0;
  std::size_t reps = 0;
  int refine_passes = 0;
  RngConfig rng;
  // Block order slots; empty for the plain letter order.
  std::vector<Letter> blocks;
};

// Z^a integrand at one point of J (limiting side): the sum over active slots of
// the path increment of the slot's letter across the slot's interval.
// Throws PointNotInJ.
double eval_za(const BrownianGrid& path, const AnalysisReport& report, const GridPoint& point);

// Z^b integrand at one point of K: the closed-form functional applied to the
// increments of both paths. Throws PointNotInK.
double eval_zb(const BrownianGrid& path, const AnalysisReport& report, const GridPoint& point);

// Max of the integrand over a grid for one path (no refinement).
double grid_max(const BrownianGrid& path, const AnalysisReport& report, const PolytopeGrid& grid);

// The grid used by the sampler: J in Case a, K in Case b.
PolytopeGrid sampler_grid(const AnalysisReport& report, int r);

LimitSampleSet sample_limit(const AnalysisReport& report, const SamplerOptions& options,
                            const RngConfig& rng);

// Report from blocks_analysis; slots sharing a letter share its path.
LimitSampleSet sample_limit_blocks(const AnalysisReport& report, const SamplerOptions& options,
                                   const RngConfig& rng);

// One sample per line after '#'-prefixed metadata and a header row; values
// are written with 17 significant digits so reading back is exact.
void write_csv(std::ostream& out, const LimitSampleSet& set);
LimitSampleSet read_csv(std::istream& in);
void write_csv_file(const std::string& path, const LimitSampleSet& set);
LimitSampleSet read_csv_file(const std::string& path);

}  // namespace lci
