#pragma once

#include <cstdint>

#include "uqeval/types.hpp"

namespace uqeval {

/// Generator knobs for calibrated / miscalibrated / shifted heteroscedastic
/// regression sets. Same config -> bit-identical set, at any thread count.
struct SynthConfig {
  std::size_t n = 1000;        ///< record count, >= 1
  std::size_t m = 1;           ///< ensemble size, >= 1
  std::uint64_t seed = 0;
  double sigma_lo = 0.5;       ///< true noise sigma drawn uniformly from
  double sigma_hi = 2.0;       ///< [sigma_lo, sigma_hi], 0 < lo <= hi
  double miscalibration = 1.0; ///< c: reported variance = c^2 * true variance
  double shift_fraction = 0.0; ///< in [0, 1]; tail fraction of shifted records
  double shift_scale = 0.0;    ///< additive bias on shifted ground truths
  double member_jitter = 0.0;  ///< member-mean spread, relative to the record's true sigma
};

/// Throws invalid_config if any range constraint is violated.
void validate_config(const SynthConfig& config);

/// Per record: sigma ~ U[sigma_lo, sigma_hi], latent mean ~ U[-5, 5],
/// y_true ~ N(latent (+ shift_scale for the shifted tail), sigma^2); each
/// member reports mean = latent + N(0, (member_jitter * sigma)^2) and
/// variance = miscalibration^2 * sigma^2 (predictions do not track the
/// shift). Draws come from per-record substreams via an inverse-CDF
/// normal, so generation is deterministic and parallelizable.
EvaluationSet generate(const SynthConfig& config);

/// Inverse standard normal CDF (Acklam's approximation + one Halley
/// refinement). Exposed for tests; p in (0, 1).
double inverse_normal_cdf(double p);

}  // namespace uqeval
