#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "uqeval/errors.hpp"

namespace uqeval {

/// One ensemble member's Gaussian prediction: mean in target units,
/// variance in squared target units.
struct MemberPrediction {
  double mean = 0.0;
  double variance = 0.0;

  friend bool operator==(const MemberPrediction&, const MemberPrediction&) = default;
};

/// One evaluated example: ground truth plus M >= 1 member predictions.
struct PredictionRecord {
  std::string id;
  double y_true = 0.0;
  std::vector<MemberPrediction> members;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Per-record scalar uncertainty measures. "variance" is a single model's
/// raw predicted variance; the rest are ensemble measures (llfu works for
/// both, parameterized by LlfuMode).
enum class Measure { mvar, tvar, varm, epkl, llfu, variance };

/// Which quantity plays x in the llfu score.
enum class LlfuMode { target, ensemble_mean };

const char* measure_name(Measure m) noexcept;
Measure parse_measure(const std::string& name);  // throws measure_unavailable

const char* llfu_mode_name(LlfuMode m) noexcept;
LlfuMode parse_llfu_mode(const std::string& name);  // throws invalid_config

/// Validated, immutable record collection with a uniform member count.
/// Construction only through validate_set; safe to share across threads.
class EvaluationSet {
 public:
  const std::vector<PredictionRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  std::size_t member_count() const noexcept { return member_count_; }
  const PredictionRecord& operator[](std::size_t i) const { return records_[i]; }

  friend bool operator==(const EvaluationSet&, const EvaluationSet&) = default;

 private:
  friend EvaluationSet validate_set(std::vector<PredictionRecord> records);
  EvaluationSet(std::vector<PredictionRecord> records, std::size_t member_count)
      : records_(std::move(records)), member_count_(member_count) {}

  std::vector<PredictionRecord> records_;
  std::size_t member_count_ = 0;
};

/// Validation gate: every downstream computation consumes only sets that
/// passed here. Record order is preserved. Throws Error with
/// empty_set / ragged_ensemble / negative_variance / non_finite / duplicate_id.
EvaluationSet validate_set(std::vector<PredictionRecord> records);

/// Per-record uncertainty values under a named measure, aligned to an
/// EvaluationSet's record order. Values are checked finite at construction.
struct UncertaintyVector {
  Measure measure = Measure::variance;
  std::vector<double> values;
  std::optional<LlfuMode> mode;  // set when measure == llfu

  UncertaintyVector() = default;
  UncertaintyVector(Measure m, std::vector<double> v, std::optional<LlfuMode> md = std::nullopt);

  std::size_t size() const noexcept { return values.size(); }
};

/// Throws length_mismatch unless vec is aligned to set.
void require_aligned(const EvaluationSet& set, const UncertaintyVector& vec);

}  // namespace uqeval
