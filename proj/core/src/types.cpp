#include "uqeval/types.hpp"

#include <cmath>
#include <unordered_set>
#include <utility>

namespace uqeval {

const char* measure_name(Measure m) noexcept {
  switch (m) {
    case Measure::mvar: return "mvar";
    case Measure::tvar: return "tvar";
    case Measure::varm: return "varm";
    case Measure::epkl: return "epkl";
    case Measure::llfu: return "llfu";
    case Measure::variance: return "variance";
  }
  return "?";
}

Measure parse_measure(const std::string& name) {
  if (name == "mvar") return Measure::mvar;
  if (name == "tvar") return Measure::tvar;
  if (name == "varm") return Measure::varm;
  if (name == "epkl") return Measure::epkl;
  if (name == "llfu") return Measure::llfu;
  if (name == "variance") return Measure::variance;
  throw Error(errc::measure_unavailable, "unknown measure '" + name + "'");
}

const char* llfu_mode_name(LlfuMode m) noexcept {
  return m == LlfuMode::target ? "target" : "ensemble-mean";
}

LlfuMode parse_llfu_mode(const std::string& name) {
  if (name == "target") return LlfuMode::target;
  if (name == "ensemble-mean") return LlfuMode::ensemble_mean;
  throw Error(errc::invalid_config, "unknown llfu mode '" + name + "'");
}

EvaluationSet validate_set(std::vector<PredictionRecord> records) {
  if (records.empty()) throw Error(errc::empty_set, "no records");

  const std::size_t member_count = records.front().members.size();
  std::unordered_set<std::string> seen;
  seen.reserve(records.size());

  for (const PredictionRecord& r : records) {
    if (r.members.empty())
      throw Error(errc::ragged_ensemble, "record '" + r.id + "' has no ensemble members");
    if (r.members.size() != member_count)
      throw Error(errc::ragged_ensemble,
                  "record '" + r.id + "' has " + std::to_string(r.members.size()) +
                      " members, expected " + std::to_string(member_count));
    if (!std::isfinite(r.y_true))
      throw Error(errc::non_finite, "y_true of record '" + r.id + "' is not finite");
    for (std::size_t m = 0; m < r.members.size(); ++m) {
      const MemberPrediction& p = r.members[m];
      if (!std::isfinite(p.mean))
        throw Error(errc::non_finite,
                    "mean_" + std::to_string(m) + " of record '" + r.id + "' is not finite");
      if (!std::isfinite(p.variance))
        throw Error(errc::non_finite,
                    "var_" + std::to_string(m) + " of record '" + r.id + "' is not finite");
      if (p.variance < 0.0)
        throw Error(errc::negative_variance,
                    "var_" + std::to_string(m) + " of record '" + r.id + "' is negative");
    }
    if (!seen.insert(r.id).second)
      throw Error(errc::duplicate_id, "record id '" + r.id + "' appears more than once");
  }

  return EvaluationSet(std::move(records), member_count);
}

UncertaintyVector::UncertaintyVector(Measure m, std::vector<double> v, std::optional<LlfuMode> md)
    : measure(m), values(std::move(v)), mode(md) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw Error(errc::non_finite, std::string(measure_name(measure)) + " value at index " +
                                        std::to_string(i) + " is not finite");
  }
}

void require_aligned(const EvaluationSet& set, const UncertaintyVector& vec) {
  if (vec.values.size() != set.size())
    throw Error(errc::length_mismatch,
                "uncertainty vector has " + std::to_string(vec.values.size()) +
                    " values for " + std::to_string(set.size()) + " records");
}

}  // namespace uqeval
