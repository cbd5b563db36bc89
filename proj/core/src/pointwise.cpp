#include "uqeval/pointwise.hpp"

#include <algorithm>
#include <cmath>

#include "internal.hpp"
#include "uqeval/ensemble.hpp"

namespace uqeval {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double llfu_unchecked(double x, double mu, double sigma2) {
  const double log_term = 0.5 * std::log(kTwoPi * sigma2);
  const double d = x - mu;
  return std::max(0.0, log_term) + d * d / (2.0 * sigma2);
}

double floored(double sigma2, const std::optional<double>& floor) {
  return floor ? std::max(sigma2, *floor) : sigma2;
}

}  // namespace

double llfu(double x, double mu, double sigma2) {
  if (!(sigma2 > 0.0))
    throw Error(errc::non_positive_variance,
                "llfu needs a positive variance, got " + std::to_string(sigma2));
  return llfu_unchecked(x, mu, sigma2);
}

UncertaintyVector llfu_vector(const EvaluationSet& set, const LlfuConfig& config) {
  if (config.variance_floor && !(*config.variance_floor > 0.0))
    throw Error(errc::invalid_config, "variance floor must be strictly positive");

  const std::vector<AggregatedPrediction> agg = aggregate_all(set);

  // surface non-positive variances on the calling thread, with the record id
  if (!config.variance_floor) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (config.mode == LlfuMode::target) {
        if (!(agg[i].tvar > 0.0))
          throw Error(errc::non_positive_variance,
                      "record '" + set[i].id + "' has non-positive total variance");
      } else {
        for (const MemberPrediction& p : set[i].members)
          if (!(p.variance > 0.0))
            throw Error(errc::non_positive_variance,
                        "record '" + set[i].id + "' has a non-positive member variance");
      }
    }
  }

  std::vector<double> values(set.size());
  parallel_for(set.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (config.mode == LlfuMode::target) {
        values[i] = llfu_unchecked(set[i].y_true, agg[i].mean_hat,
                                   floored(agg[i].tvar, config.variance_floor));
      } else {
        double sum = 0.0;
        for (const MemberPrediction& p : set[i].members)
          sum += llfu_unchecked(agg[i].mean_hat, p.mean,
                                floored(p.variance, config.variance_floor));
        sum /= static_cast<double>(set[i].members.size());
        values[i] = sum;
      }
    }
  });
  return UncertaintyVector(Measure::llfu, std::move(values), config.mode);
}

double mwse(const EvaluationSet& set, const UncertaintyVector& unc) {
  require_aligned(set, unc);
  const std::vector<double> sq_err = internal::squared_errors(set);
  double sum = 0.0;
  for (std::size_t i = 0; i < sq_err.size(); ++i) sum += sq_err[i] * unc.values[i];
  return sum / static_cast<double>(set.size());
}

}  // namespace uqeval
