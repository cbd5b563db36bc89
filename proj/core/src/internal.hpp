#pragma once

#include <vector>

#include "uqeval/parallel.hpp"
#include "uqeval/types.hpp"

namespace uqeval::internal {

// Ensemble predictive mean per record (member mean for M == 1).
inline std::vector<double> predictive_means(const EvaluationSet& set) {
  std::vector<double> out(set.size());
  parallel_for(set.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const PredictionRecord& r = set[i];
      double sum = 0.0;
      for (const MemberPrediction& p : r.members) sum += p.mean;
      out[i] = sum / static_cast<double>(r.members.size());
    }
  });
  return out;
}

// (mean_hat_i - y_i)^2 per record.
inline std::vector<double> squared_errors(const EvaluationSet& set) {
  std::vector<double> out = predictive_means(set);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double e = out[i] - set[i].y_true;
    out[i] = e * e;
  }
  return out;
}

}  // namespace uqeval::internal
