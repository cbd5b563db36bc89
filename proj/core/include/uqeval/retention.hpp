#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "uqeval/types.hpp"

namespace uqeval {

enum class CurveKind { mse, f1, r3, mwse };

const char* curve_kind_name(CurveKind k) noexcept;
CurveKind parse_curve_kind(const std::string& name);  // throws wrong_curve_kind

struct CurvePoint {
  double fraction = 0.0;
  double value = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Sampled (retention fraction, value) pairs of one curve kind, fractions
/// strictly increasing and ending at 1, plus the trapezoidal AUC over the
/// sampled range. mse and f1 curves start at fraction 0; r3 and mwse start
/// at the smallest positive grid point (an empty retained set has no
/// subset statistic).
struct RetentionCurve {
  CurveKind kind = CurveKind::mse;
  std::vector<CurvePoint> points;
  double auc = 0.0;
  std::string measure;               ///< name of the ranking uncertainty
  std::optional<double> threshold;   ///< f1 only
};

/// Record indices sorted by uncertainty ascending; ties keep record order.
std::vector<std::size_t> rank_by_uncertainty(const UncertaintyVector& unc);

/// Replacement MSE-retention: at each grid fraction f retain the
/// ceil(f*T) least-uncertain records; rejected records contribute zero
/// error; the value is the mean squared error over all T records.
/// Grid: {0, 1/(g-1), ..., 1}, grid_size >= 2.
RetentionCurve mse_retention_curve(const EvaluationSet& set, const UncertaintyVector& unc,
                                   std::size_t grid_size);

/// AUC of an MSE-retention curve (lower is better).
double r_auc(const RetentionCurve& curve);

/// a_i = |mean_hat_i - y_i| <= tau (closed inequality). tau must be > 0.
std::vector<bool> acceptability(const EvaluationSet& set, double tau);

/// F1-retention: at each fraction, TP = retained & acceptable,
/// FP = retained & not acceptable, FN = rejected & acceptable;
/// F1 = 2TP / (2TP + FP + FN), defined as 1 when the denominator is 0.
RetentionCurve f1_retention_curve(const EvaluationSet& set, const UncertaintyVector& unc,
                                  double tau, std::size_t grid_size);

/// Curve value at retention r, linearly interpolated between grid points.
double f1_at(const RetentionCurve& curve, double r = 0.95);

/// RMSE/RMV ratio over the retained subset (no replacement), ranked by
/// unc, RMV taken from variances. The grid excludes fraction 0.
RetentionCurve r3_curve(const EvaluationSet& set, const UncertaintyVector& unc,
                        const UncertaintyVector& variances, std::size_t grid_size);

/// Subset MWSE over the retained records (no replacement); the same
/// vector ranks and weights.
RetentionCurve mwse_retention_curve(const EvaluationSet& set, const UncertaintyVector& unc,
                                    std::size_t grid_size);

/// Split form: rank by `ranking`, weight by `weights`. Curves depend on
/// `ranking` only through its ordering.
RetentionCurve mwse_retention_curve(const EvaluationSet& set, const UncertaintyVector& ranking,
                                    const UncertaintyVector& weights, std::size_t grid_size);

/// Trapezoid over (fraction, value) points sorted by fraction.
double trapezoid_auc(const std::vector<CurvePoint>& points);

}  // namespace uqeval
