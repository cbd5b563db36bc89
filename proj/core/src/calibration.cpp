#include "uqeval/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "internal.hpp"

namespace uqeval {

namespace {

void require_nonnegative(const UncertaintyVector& variances) {
  for (std::size_t i = 0; i < variances.values.size(); ++i) {
    if (variances.values[i] < 0.0)
      throw Error(errc::negative_variance,
                  "variance value at index " + std::to_string(i) + " is negative");
  }
}

}  // namespace

BinPartition partition_by_variance(const EvaluationSet& set, const UncertaintyVector& variances,
                                   std::size_t n_bins) {
  require_aligned(set, variances);
  require_nonnegative(variances);
  const std::size_t t = set.size();
  if (n_bins < 1) throw Error(errc::invalid_bin_count, "bin count must be at least 1");
  if (n_bins > t)
    throw Error(errc::too_many_bins, std::to_string(n_bins) + " bins for " + std::to_string(t) +
                                         " records");

  std::vector<std::size_t> order(t);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return variances.values[a] < variances.values[b];
  });

  const std::vector<double> sq_err = internal::squared_errors(set);

  BinPartition partition;
  partition.source_measure = variances.measure;
  partition.bins.reserve(n_bins);
  partition.stats.reserve(n_bins);

  const std::size_t base = t / n_bins;
  const std::size_t extra = t % n_bins;  // first `extra` bins take one more
  std::size_t pos = 0;
  for (std::size_t b = 0; b < n_bins; ++b) {
    const std::size_t size = base + (b < extra ? 1 : 0);
    std::vector<std::size_t> bin(order.begin() + pos, order.begin() + pos + size);

    double sum_sq = 0.0;
    double sum_var = 0.0;
    for (std::size_t idx : bin) {
      sum_sq += sq_err[idx];
      sum_var += variances.values[idx];
    }
    BinStats stats;
    stats.rmse = std::sqrt(sum_sq / static_cast<double>(size));
    stats.rmv = std::sqrt(sum_var / static_cast<double>(size));
    stats.sigma_lo = std::sqrt(variances.values[bin.front()]);
    stats.sigma_hi = std::sqrt(variances.values[bin.back()]);
    stats.size = size;

    partition.bins.push_back(std::move(bin));
    partition.stats.push_back(stats);
    pos += size;
  }
  return partition;
}

double rmse(const EvaluationSet& set, std::span<const std::size_t> indices) {
  if (indices.empty()) throw Error(errc::empty_subset, "rmse over an empty subset");
  const std::vector<double> means = internal::predictive_means(set);
  double sum = 0.0;
  for (std::size_t idx : indices) {
    const double e = means[idx] - set[idx].y_true;
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(indices.size()));
}

double rmv(const UncertaintyVector& variances, std::span<const std::size_t> indices) {
  if (indices.empty()) throw Error(errc::empty_subset, "rmv over an empty subset");
  double sum = 0.0;
  for (std::size_t idx : indices) sum += variances.values[idx];
  return std::sqrt(sum / static_cast<double>(indices.size()));
}

double ence(const BinPartition& partition) {
  const std::size_t n = partition.stats.size();
  double sum = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    const BinStats& s = partition.stats[b];
    if (s.rmv == 0.0)
      throw Error(errc::zero_rmv_bin, "bin " + std::to_string(b) + " has zero RMV");
    sum += std::abs(s.rmv - s.rmse) / s.rmv;
  }
  return sum / static_cast<double>(n);
}

double variation_coefficient(const UncertaintyVector& variances) {
  require_nonnegative(variances);
  const std::size_t t = variances.values.size();
  if (t < 2)
    throw Error(errc::insufficient_data,
                "variation coefficient needs at least 2 values, got " + std::to_string(t));

  double sum_sigma = 0.0;
  for (double v : variances.values) sum_sigma += std::sqrt(v);
  const double mean_sigma = sum_sigma / static_cast<double>(t);
  if (mean_sigma == 0.0) throw Error(errc::zero_mean_sigma, "all variances are zero");

  double sum_sq_dev = 0.0;
  for (double v : variances.values) {
    const double d = std::sqrt(v) - mean_sigma;
    sum_sq_dev += d * d;
  }
  return std::sqrt(sum_sq_dev / static_cast<double>(t - 1)) / mean_sigma;
}

double lence(double ence_value, double cv_value) {
  if (cv_value == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(std::abs(ence_value + 1.0 / cv_value));
}

CalibrationReport calibration_report(const EvaluationSet& set, const UncertaintyVector& variances,
                                     std::size_t n_bins) {
  CalibrationReport report;
  report.partition = partition_by_variance(set, variances, n_bins);
  report.ence = ence(report.partition);
  report.cv = variation_coefficient(variances);
  report.lence = lence(report.ence, report.cv);
  return report;
}

}  // namespace uqeval
