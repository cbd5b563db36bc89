#include "uqeval/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "uqeval/parallel.hpp"

namespace uqeval {

namespace {

bool all_members_identical(const PredictionRecord& record) {
  const MemberPrediction& first = record.members.front();
  return std::all_of(record.members.begin(), record.members.end(),
                     [&](const MemberPrediction& m) { return m == first; });
}

bool has_zero_variance(const PredictionRecord& record) {
  return std::any_of(record.members.begin(), record.members.end(),
                     [](const MemberPrediction& m) { return m.variance == 0.0; });
}

// mean_hat, mvar, varm, tvar without the epkl pass.
AggregatedPrediction moments(const PredictionRecord& record) {
  const double m = static_cast<double>(record.members.size());
  AggregatedPrediction out;

  double sum_mean = 0.0;
  double sum_var = 0.0;
  for (const MemberPrediction& p : record.members) {
    sum_mean += p.mean;
    sum_var += p.variance;
  }
  out.mean_hat = sum_mean / m;
  out.mvar = sum_var / m;

  double sum_sq_dev = 0.0;
  for (const MemberPrediction& p : record.members) {
    const double d = p.mean - out.mean_hat;
    sum_sq_dev += d * d;
  }
  out.varm = sum_sq_dev / m;
  out.tvar = out.mvar + out.varm;
  return out;
}

}  // namespace

AggregatedPrediction aggregate(const PredictionRecord& record) {
  AggregatedPrediction out = moments(record);
  if (record.members.size() >= 2 && !has_zero_variance(record)) out.epkl = epkl(record);
  return out;
}

std::vector<AggregatedPrediction> aggregate_all(const EvaluationSet& set) {
  std::vector<AggregatedPrediction> out(set.size());
  parallel_for(set.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = aggregate(set[i]);
  });
  return out;
}

// Sum over ordered pairs i != j of
//   KL(N_i || N_j) = ln(sigma_j/sigma_i) + (var_i + (mu_i - mu_j)^2) / (2 var_j) - 1/2.
// The log terms cancel over ordered pairs; the rest reduces to sums of
// var_i, 1/var_j, and (mu_j - mean)^2 / var_j, giving an O(M) form.
double epkl(const PredictionRecord& record) {
  const std::size_t m = record.members.size();
  if (m < 2)
    throw Error(errc::insufficient_members,
                "epkl needs at least 2 members, record '" + record.id + "' has " +
                    std::to_string(m));
  for (std::size_t k = 0; k < m; ++k) {
    if (record.members[k].variance == 0.0)
      throw Error(errc::zero_variance, "var_" + std::to_string(k) + " of record '" + record.id +
                                           "' is zero; pairwise KL is undefined");
  }
  if (all_members_identical(record)) return 0.0;

  const double md = static_cast<double>(m);
  double sum_mean = 0.0;
  for (const MemberPrediction& p : record.members) sum_mean += p.mean;
  const double mean = sum_mean / md;

  double sum_var = 0.0;       // sum var_i
  double sum_inv_var = 0.0;   // sum 1/var_j
  double sum_sq_dev = 0.0;    // sum (mu_i - mean)^2
  double sum_dev_ratio = 0.0; // sum (mu_j - mean)^2 / var_j
  for (const MemberPrediction& p : record.members) {
    sum_var += p.variance;
    sum_inv_var += 1.0 / p.variance;
    const double d = p.mean - mean;
    sum_sq_dev += d * d;
    sum_dev_ratio += d * d / p.variance;
  }
  const double varm = sum_sq_dev / md;

  const double pair_count = md * (md - 1.0);
  const double total = 0.5 * (sum_var * sum_inv_var - md) +
                       0.5 * md * (varm * sum_inv_var + sum_dev_ratio) - 0.5 * pair_count;
  return std::max(0.0, total / pair_count);
}

UncertaintyVector uncertainty_vector(const EvaluationSet& set, Measure measure) {
  switch (measure) {
    case Measure::llfu:
      throw Error(errc::measure_unavailable, "llfu is computed by llfu_vector, not here");
    case Measure::epkl:
      if (set.member_count() < 2)
        throw Error(errc::measure_unavailable,
                    "epkl needs an ensemble (M >= 2), set has M = " +
                        std::to_string(set.member_count()));
      // fail on the calling thread, before the parallel fill
      for (const PredictionRecord& r : set.records()) {
        for (std::size_t k = 0; k < r.members.size(); ++k)
          if (r.members[k].variance == 0.0)
            throw Error(errc::zero_variance, "var_" + std::to_string(k) + " of record '" + r.id +
                                                 "' is zero; pairwise KL is undefined");
      }
      break;
    case Measure::variance:
      if (set.member_count() != 1)
        throw Error(errc::measure_unavailable,
                    "raw variance is a single-model measure, set has M = " +
                        std::to_string(set.member_count()));
      break;
    default:
      break;
  }

  std::vector<double> values(set.size());
  parallel_for(set.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const PredictionRecord& r = set[i];
      switch (measure) {
        case Measure::mvar: values[i] = moments(r).mvar; break;
        case Measure::tvar: values[i] = moments(r).tvar; break;
        case Measure::varm: values[i] = moments(r).varm; break;
        case Measure::epkl: values[i] = epkl(r); break;
        case Measure::variance: values[i] = r.members.front().variance; break;
        case Measure::llfu: break;  // rejected above
      }
    }
  });
  return UncertaintyVector(measure, std::move(values));
}

Measure default_measure(const EvaluationSet& set) noexcept {
  return set.member_count() == 1 ? Measure::variance : Measure::tvar;
}

}  // namespace uqeval
