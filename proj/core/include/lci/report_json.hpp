#pragma once

#include <json.hpp>

#include "lci/analysis.hpp"
#include "lci/harness.hpp"
#include "lci/limit_sampler.hpp"

namespace lci {

// Rationals are written as exact fraction strings.
nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const KsResult& ks);
nlohmann::json to_json(const ConvergeReport& report);
// Metadata plus summary statistics (not the samples themselves).
nlohmann::json summary_json(const LimitSampleSet& set);

}  // namespace lci
