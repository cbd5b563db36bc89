#include "uqeval/retention.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "internal.hpp"

namespace uqeval {

namespace {

void require_grid(std::size_t grid_size) {
  if (grid_size < 2) throw Error(errc::invalid_config, "grid size must be at least 2");
}

double fraction_at(std::size_t i, std::size_t grid_size) {
  return static_cast<double>(i) / static_cast<double>(grid_size - 1);
}

// ceil(f * T) for f = i/(g-1), exact in integer arithmetic so grid points
// never gain or lose a record to floating-point rounding.
std::size_t retained_at(std::size_t i, std::size_t t, std::size_t grid_size) {
  const std::size_t g1 = grid_size - 1;
  return (i * t + g1 - 1) / g1;
}

// prefix[k] = sum of the first k ranked values; sequential for determinism.
std::vector<double> ranked_prefix_sums(const std::vector<double>& per_record,
                                       const std::vector<std::size_t>& order) {
  std::vector<double> prefix(order.size() + 1, 0.0);
  for (std::size_t k = 0; k < order.size(); ++k)
    prefix[k + 1] = prefix[k] + per_record[order[k]];
  return prefix;
}

}  // namespace

const char* curve_kind_name(CurveKind k) noexcept {
  switch (k) {
    case CurveKind::mse: return "mse";
    case CurveKind::f1: return "f1";
    case CurveKind::r3: return "r3";
    case CurveKind::mwse: return "mwse";
  }
  return "?";
}

CurveKind parse_curve_kind(const std::string& name) {
  if (name == "mse") return CurveKind::mse;
  if (name == "f1") return CurveKind::f1;
  if (name == "r3") return CurveKind::r3;
  if (name == "mwse") return CurveKind::mwse;
  throw Error(errc::wrong_curve_kind, "unknown curve kind '" + name + "'");
}

std::vector<std::size_t> rank_by_uncertainty(const UncertaintyVector& unc) {
  std::vector<std::size_t> order(unc.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return unc.values[a] < unc.values[b];
  });
  return order;
}

double trapezoid_auc(const std::vector<CurvePoint>& points) {
  double auc = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    auc += (points[i + 1].fraction - points[i].fraction) *
           (points[i].value + points[i + 1].value) * 0.5;
  return auc;
}

RetentionCurve mse_retention_curve(const EvaluationSet& set, const UncertaintyVector& unc,
                                   std::size_t grid_size) {
  require_grid(grid_size);
  require_aligned(set, unc);
  const std::size_t t = set.size();

  const std::vector<std::size_t> order = rank_by_uncertainty(unc);
  const std::vector<double> prefix = ranked_prefix_sums(internal::squared_errors(set), order);

  RetentionCurve curve;
  curve.kind = CurveKind::mse;
  curve.measure = measure_name(unc.measure);
  curve.points.reserve(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const std::size_t k = retained_at(i, t, grid_size);
    // rejected records are replaced by the ground truth: zero error
    curve.points.push_back({fraction_at(i, grid_size), prefix[k] / static_cast<double>(t)});
  }
  curve.auc = trapezoid_auc(curve.points);
  return curve;
}

double r_auc(const RetentionCurve& curve) {
  if (curve.kind != CurveKind::mse)
    throw Error(errc::wrong_curve_kind,
                std::string("R-AUC is defined on mse curves, got ") + curve_kind_name(curve.kind));
  return curve.auc;
}

std::vector<bool> acceptability(const EvaluationSet& set, double tau) {
  if (!(tau > 0.0))
    throw Error(errc::invalid_threshold, "threshold must be > 0, got " + std::to_string(tau));
  const std::vector<double> means = internal::predictive_means(set);
  std::vector<bool> acceptable(set.size());
  for (std::size_t i = 0; i < set.size(); ++i)
    acceptable[i] = std::abs(means[i] - set[i].y_true) <= tau;
  return acceptable;
}

RetentionCurve f1_retention_curve(const EvaluationSet& set, const UncertaintyVector& unc,
                                  double tau, std::size_t grid_size) {
  require_grid(grid_size);
  require_aligned(set, unc);
  const std::vector<bool> acceptable = acceptability(set, tau);
  const std::size_t t = set.size();

  const std::vector<std::size_t> order = rank_by_uncertainty(unc);
  std::vector<std::size_t> acceptable_prefix(t + 1, 0);
  for (std::size_t k = 0; k < t; ++k)
    acceptable_prefix[k + 1] = acceptable_prefix[k] + (acceptable[order[k]] ? 1 : 0);
  const std::size_t total_acceptable = acceptable_prefix[t];

  RetentionCurve curve;
  curve.kind = CurveKind::f1;
  curve.measure = measure_name(unc.measure);
  curve.threshold = tau;
  curve.points.reserve(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const std::size_t k = retained_at(i, t, grid_size);
    const std::size_t tp = acceptable_prefix[k];
    const std::size_t fp = k - tp;
    const std::size_t fn = total_acceptable - tp;
    const std::size_t denom = 2 * tp + fp + fn;
    const double f1 = denom == 0 ? 1.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
    curve.points.push_back({fraction_at(i, grid_size), f1});
  }
  curve.auc = trapezoid_auc(curve.points);
  return curve;
}

double f1_at(const RetentionCurve& curve, double r) {
  if (curve.kind != CurveKind::f1)
    throw Error(errc::wrong_curve_kind,
                std::string("F1@r is defined on f1 curves, got ") + curve_kind_name(curve.kind));
  if (!(r >= 0.0 && r <= 1.0))
    throw Error(errc::invalid_config, "retention fraction must be in [0, 1]");
  const std::vector<CurvePoint>& pts = curve.points;
  if (r <= pts.front().fraction) return pts.front().value;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (r <= pts[i].fraction) {
      const CurvePoint& lo = pts[i - 1];
      const CurvePoint& hi = pts[i];
      if (r == hi.fraction) return hi.value;
      const double w = (r - lo.fraction) / (hi.fraction - lo.fraction);
      return lo.value + w * (hi.value - lo.value);
    }
  }
  return pts.back().value;
}

RetentionCurve r3_curve(const EvaluationSet& set, const UncertaintyVector& unc,
                        const UncertaintyVector& variances, std::size_t grid_size) {
  require_grid(grid_size);
  require_aligned(set, unc);
  require_aligned(set, variances);
  const std::size_t t = set.size();

  const std::vector<std::size_t> order = rank_by_uncertainty(unc);
  const std::vector<double> sq_prefix = ranked_prefix_sums(internal::squared_errors(set), order);
  const std::vector<double> var_prefix = ranked_prefix_sums(variances.values, order);

  RetentionCurve curve;
  curve.kind = CurveKind::r3;
  curve.measure = measure_name(unc.measure);
  curve.points.reserve(grid_size - 1);
  for (std::size_t i = 1; i < grid_size; ++i) {  // no f = 0: the ratio needs a subset
    const std::size_t k = retained_at(i, t, grid_size);
    const double kd = static_cast<double>(k);
    if (!(var_prefix[k] > 0.0))
      throw Error(errc::zero_rmv_subset, "retained subset at fraction " +
                                             std::to_string(fraction_at(i, grid_size)) +
                                             " has zero RMV");
    const double ratio = std::sqrt(sq_prefix[k] / kd) / std::sqrt(var_prefix[k] / kd);
    curve.points.push_back({fraction_at(i, grid_size), ratio});
  }
  curve.auc = trapezoid_auc(curve.points);
  return curve;
}

RetentionCurve mwse_retention_curve(const EvaluationSet& set, const UncertaintyVector& ranking,
                                    const UncertaintyVector& weights, std::size_t grid_size) {
  require_grid(grid_size);
  require_aligned(set, ranking);
  require_aligned(set, weights);
  const std::size_t t = set.size();

  const std::vector<std::size_t> order = rank_by_uncertainty(ranking);
  std::vector<double> weighted = internal::squared_errors(set);
  for (std::size_t i = 0; i < t; ++i) weighted[i] *= weights.values[i];
  const std::vector<double> prefix = ranked_prefix_sums(weighted, order);

  RetentionCurve curve;
  curve.kind = CurveKind::mwse;
  curve.measure = measure_name(ranking.measure);
  curve.points.reserve(grid_size - 1);
  for (std::size_t i = 1; i < grid_size; ++i) {  // subset statistic: no f = 0
    const std::size_t k = retained_at(i, t, grid_size);
    curve.points.push_back({fraction_at(i, grid_size), prefix[k] / static_cast<double>(k)});
  }
  curve.auc = trapezoid_auc(curve.points);
  return curve;
}

RetentionCurve mwse_retention_curve(const EvaluationSet& set, const UncertaintyVector& unc,
                                    std::size_t grid_size) {
  return mwse_retention_curve(set, unc, unc, grid_size);
}

}  // namespace uqeval
