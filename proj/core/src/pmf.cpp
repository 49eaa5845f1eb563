#include "lci/pmf.hpp"

#include <cmath>
#include <string>

#include "lci/errors.hpp"
#include "lci/tolerances.hpp"

namespace lci {
namespace {

void check_entries(const std::vector<Rational>& probs) {
  if (probs.size() < 2) {
    throw Error(ErrorKind::TooShort, "pmf needs at least two letters, got " + std::to_string(probs.size()));
  }
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0) {
      throw Error(ErrorKind::NonPositiveMass,
                  "letter " + std::to_string(i + 1) + " has mass " + to_fraction_string(probs[i]));
    }
  }
}

}  // namespace

std::vector<double> Pmf::as_doubles() const {
  std::vector<double> out;
  out.reserve(probs_.size());
  for (const auto& p : probs_) out.push_back(to_double(p));
  return out;
}

Pmf validate_pmf(std::vector<Rational> probs) {
  check_entries(probs);
  Rational sum = 0;
  for (const auto& p : probs) sum += p;
  if (sum != 1) {
    throw Error(ErrorKind::NotNormalized, "entries sum to " + to_fraction_string(sum));
  }
  return Pmf(std::move(probs), true);
}

Pmf validate_pmf(std::span<const double> probs) {
  std::vector<Rational> exact;
  exact.reserve(probs.size());
  for (double p : probs) exact.push_back(rational_from_double(p));
  check_entries(exact);
  Rational sum = 0;
  for (const auto& p : exact) sum += p;
  const double deviation = std::abs(to_double(sum - 1));
  if (deviation > kTolerances.pmf_sum) {
    throw Error(ErrorKind::NotNormalized, "entries sum deviates from 1 by " + std::to_string(deviation));
  }
  return Pmf(std::move(exact), false);
}

Pmf validate_pmf(const Pmf& pmf) {
  if (pmf.exact()) return validate_pmf(std::vector<Rational>(pmf.probs()));
  const auto doubles = pmf.as_doubles();
  Pmf out = validate_pmf(std::span<const double>(doubles));
  out.exact_ = pmf.exact_;
  return out;
}

Instance::Instance(Pmf px, Pmf py) : px_(std::move(px)), py_(std::move(py)) {
  if (px_.size() != py_.size()) {
    throw Error(ErrorKind::AlphabetMismatch, "pX has " + std::to_string(px_.size()) +
                                                 " letters, pY has " + std::to_string(py_.size()));
  }
}

Pmf pmf_from_json(const nlohmann::json& entries) {
  if (!entries.is_array()) throw Error(ErrorKind::BadInput, "pmf must be a JSON array");
  bool all_strings = true;
  std::vector<Rational> values;
  for (const auto& e : entries) {
    if (e.is_string()) {
      values.push_back(parse_rational(e.get<std::string>()));
    } else if (e.is_number()) {
      all_strings = false;
      values.push_back(rational_from_double(e.get<double>()));
    } else {
      throw Error(ErrorKind::BadInput, "pmf entries must be numbers or strings");
    }
  }
  if (all_strings) return validate_pmf(std::move(values));
  // Any bare JSON number puts the whole pmf in float mode.
  std::vector<double> floats;
  for (const auto& p : values) floats.push_back(to_double(p));
  return validate_pmf(std::span<const double>(floats));
}

Instance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("pX") || !doc.contains("pY")) {
    throw Error(ErrorKind::BadInput, "instance JSON needs \"pX\" and \"pY\" arrays");
  }
  return Instance(pmf_from_json(doc.at("pX")), pmf_from_json(doc.at("pY")));
}

nlohmann::json to_json(const Pmf& pmf) {
  auto out = nlohmann::json::array();
  for (const auto& p : pmf.probs()) {
    if (pmf.exact()) {
      out.push_back(to_fraction_string(p));
    } else {
      out.push_back(to_double(p));
    }
  }
  return out;
}

nlohmann::json to_json(const Instance& instance) {
  return {{"pX", to_json(instance.px())}, {"pY", to_json(instance.py())}};
}

Pmf uniform_pmf(std::size_t m) {
  return validate_pmf(std::vector<Rational>(m, Rational(1, static_cast<long>(m))));
}

}  // namespace lci
