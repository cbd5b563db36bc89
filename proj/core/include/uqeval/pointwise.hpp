#pragma once

#include <optional>

#include "uqeval/types.hpp"

namespace uqeval {

struct LlfuConfig {
  LlfuMode mode = LlfuMode::target;
  /// When set (must be > 0), per-record variances are floored to this
  /// value before scoring instead of raising non_positive_variance.
  std::optional<double> variance_floor;
};

/// Clipped Gaussian log-loss score: max(0, 0.5*ln(2*pi*sigma2)) +
/// (x - mu)^2 / (2*sigma2). Always >= 0. Throws non_positive_variance
/// when sigma2 <= 0.
double llfu(double x, double mu, double sigma2);

/// Per-record llfu values.
///   target:        x = y_true, (mu, sigma2) = aggregated (mean_hat, tvar)
///                  (for M == 1 that is the sole member's mean and variance)
///   ensemble_mean: (1/M) sum_m llfu(mean_hat, mu_m, sigma2_m); needs no
///                  ground truth.
UncertaintyVector llfu_vector(const EvaluationSet& set, const LlfuConfig& config = {});

/// Mean of squared error times per-record uncertainty, over all records.
double mwse(const EvaluationSet& set, const UncertaintyVector& unc);

}  // namespace uqeval
