#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uqeval/types.hpp"

namespace uqeval {

struct BinStats {
  double rmse = 0.0;
  double rmv = 0.0;
  double sigma_lo = 0.0;  ///< sqrt of the smallest variance in the bin
  double sigma_hi = 0.0;  ///< sqrt of the largest variance in the bin
  std::size_t size = 0;
};

/// Variance-ordered equal-count bins. Bins jointly cover all record
/// indices, sizes differ by at most one, and the sigma intervals are
/// non-overlapping with non-decreasing boundaries.
struct BinPartition {
  std::vector<std::vector<std::size_t>> bins;  ///< record indices per bin
  std::vector<BinStats> stats;                 ///< aligned with bins
  Measure source_measure = Measure::variance;
};

struct CalibrationReport {
  double ence = 0.0;
  double cv = 0.0;
  double lence = 0.0;  ///< +infinity when cv == 0
  BinPartition partition;
};

/// Sort records ascending by variance (stable, ties keep record order) and
/// split into n_bins contiguous groups; when n_bins does not divide T the
/// first (T mod n_bins) bins take one extra record.
BinPartition partition_by_variance(const EvaluationSet& set,
                                   const UncertaintyVector& variances,
                                   std::size_t n_bins);

/// Root mean squared error of the ensemble predictive mean over a subset.
double rmse(const EvaluationSet& set, std::span<const std::size_t> indices);

/// Root mean variance over a subset.
double rmv(const UncertaintyVector& variances, std::span<const std::size_t> indices);

/// Mean per-bin |RMV - RMSE| / RMV. Throws zero_rmv_bin (with the bin
/// index) when a bin's RMV is zero; the formula is undefined there.
double ence(const BinPartition& partition);

/// Sample standard deviation of the predicted sigmas divided by their mean.
/// Requires T >= 2 and a positive mean sigma.
double variation_coefficient(const UncertaintyVector& variances);

/// ln|ence + 1/cv|; +infinity when cv == 0 (1/Cv dominates).
double lence(double ence_value, double cv_value);

/// Bundled partition + ENCE + Cv + LENCE. Cv is computed over the full
/// evaluation set, not per bin.
CalibrationReport calibration_report(const EvaluationSet& set,
                                     const UncertaintyVector& variances,
                                     std::size_t n_bins);

}  // namespace uqeval
