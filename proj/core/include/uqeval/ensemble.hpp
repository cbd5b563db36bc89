#pragma once

#include <optional>
#include <vector>

#include "uqeval/types.hpp"

namespace uqeval {

/// Per-member Gaussians collapsed to a predictive mean and the scalar
/// uncertainty measures. tvar == mvar + varm by construction; varm == 0
/// and epkl is absent when M == 1. epkl is also left absent when a member
/// variance is zero (the pairwise KL is undefined there).
struct AggregatedPrediction {
  double mean_hat = 0.0;  ///< ensemble predictive mean
  double mvar = 0.0;      ///< mean member variance (data uncertainty)
  double varm = 0.0;      ///< variance of member means (knowledge uncertainty)
  double tvar = 0.0;      ///< mvar + varm
  std::optional<double> epkl;
};

AggregatedPrediction aggregate(const PredictionRecord& record);

/// Aggregate every record, in record order. Parallel across records;
/// the result is identical at any thread count.
std::vector<AggregatedPrediction> aggregate_all(const EvaluationSet& set);

/// Expected pairwise KL divergence between members, averaged over ordered
/// pairs i != j. Requires M >= 2 and all member variances > 0.
/// Closed form, O(M); equals the naive double loop over ordered pairs.
double epkl(const PredictionRecord& record);

/// Per-record values of one measure, in record order.
/// epkl requires M >= 2; "variance" requires M == 1; llfu is served by
/// llfu_vector (pointwise.hpp), not here.
UncertaintyVector uncertainty_vector(const EvaluationSet& set, Measure measure);

/// The default ranking/RMV measure: tvar for ensembles, the raw predicted
/// variance for single models.
Measure default_measure(const EvaluationSet& set) noexcept;

}  // namespace uqeval
