#include "lci/report_json.hpp"

namespace lci {
namespace {

nlohmann::json fractions(const std::vector<Rational>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(to_fraction_string(x));
  return out;
}

}  // namespace

nlohmann::json to_json(const AnalysisReport& r) {
  nlohmann::json j;
  j["case"] = std::string(to_string(r.limit_case));
  j["e_max"] = to_fraction_string(r.e_max);
  j["e_max_float"] = to_double(r.e_max);
  j["e1"] = to_fraction_string(r.e1);
  j["e2"] = r.e2 ? nlohmann::json(to_fraction_string(*r.e2)) : nlohmann::json(nullptr);
  j["I"] = r.active;
  j["exact"] = r.exact;
  j["both_directions"] = r.both_directions;
  j["pX"] = fractions(r.px);
  j["pY"] = fractions(r.py);
  j["slot_letter"] = r.slot_letter;
  j["anchor"] = {{"X", fractions(r.anchor_x)}, {"Y", fractions(r.anchor_y)}};
  nlohmann::json c;
  if (const auto* a = std::get_if<CaseAConstants>(&r.constants)) {
    c["i1"] = a->i1;
    c["limiting_side"] = r.limiting_side() == Side::X ? "X" : "Y";
  } else if (const auto* b1 = std::get_if<CaseB1Constants>(&r.constants)) {
    c["s_X"] = to_fraction_string(b1->s_x);
    c["t_X"] = to_fraction_string(b1->t_x);
    c["s_Y"] = to_fraction_string(b1->s_y);
    c["t_Y"] = to_fraction_string(b1->t_y);
  } else {
    const auto& b2 = std::get<CaseB2Constants>(r.constants);
    c["s"] = to_fraction_string(b2.s);
    c["t"] = to_fraction_string(b2.t);
  }
  j["constants"] = c;
  return j;
}

nlohmann::json to_json(const KsResult& ks) {
  return {{"D", ks.statistic}, {"n_a", ks.n_a}, {"n_b", ks.n_b}, {"p_value", ks.p_value}};
}

nlohmann::json summary_json(const LimitSampleSet& s) {
  nlohmann::json j;
  j["case"] = std::string(to_string(s.limit_case));
  j["path_steps"] = s.path_steps;
  j["grid_r"] = s.grid_r;
  j["reps"] = s.reps;
  j["refine_passes"] = s.refine_passes;
  j["seed"] = s.rng.seed;
  j["stream"] = s.rng.stream;
  if (!s.blocks.empty()) j["blocks"] = s.blocks;
  if (!s.samples.empty()) j["mean"] = mean(s.samples);
  if (s.samples.size() > 1) j["sd"] = sample_sd(s.samples);
  return j;
}

nlohmann::json to_json(const ConvergeReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n}, {"mean_zn", row.mean_zn}, {"sd_zn", row.sd_zn}, {"ks", to_json(row.ks)}});
  }
  return {{"rows", rows}, {"limit", summary_json(r.limit)}, {"ks_nonincreasing", r.nonincreasing}};
}

}  // namespace lci
