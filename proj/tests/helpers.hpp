#pragma once

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "uqeval/uqeval.hpp"

// Test-side builders and independent oracles. The oracles deliberately use
// the naive formulations (double loops, per-permutation scans) so they share
// no code path with the library.
namespace testutil {

inline uqeval::PredictionRecord record(std::string id, double y_true,
                                       std::vector<std::pair<double, double>> members) {
  uqeval::PredictionRecord r;
  r.id = std::move(id);
  r.y_true = y_true;
  for (const auto& [mean, variance] : members) r.members.push_back({mean, variance});
  return r;
}

// rows of (y_true, predicted mean, predicted variance), M = 1
inline uqeval::EvaluationSet single_model_set(
    const std::vector<std::array<double, 3>>& rows) {
  std::vector<uqeval::PredictionRecord> records;
  for (std::size_t i = 0; i < rows.size(); ++i)
    records.push_back(record(std::to_string(i), rows[i][0], {{rows[i][1], rows[i][2]}}));
  return uqeval::validate_set(std::move(records));
}

inline uqeval::UncertaintyVector vec(std::vector<double> values,
                                     uqeval::Measure tag = uqeval::Measure::variance) {
  return uqeval::UncertaintyVector(tag, std::move(values));
}

// ordered-pair double loop, straight from the Gaussian KL formula
inline double naive_epkl(const uqeval::PredictionRecord& r) {
  const auto& ms = r.members;
  const std::size_t m = ms.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      sum += std::log(std::sqrt(ms[j].variance) / std::sqrt(ms[i].variance)) +
             (ms[i].variance + (ms[i].mean - ms[j].mean) * (ms[i].mean - ms[j].mean)) /
                 (2.0 * ms[j].variance) -
             0.5;
    }
  }
  return sum / (static_cast<double>(m) * static_cast<double>(m - 1));
}

// right-to-left accumulation in long double: independent of the library's
// left-to-right double trapezoid
inline double trapezoid_oracle(const std::vector<uqeval::CurvePoint>& pts) {
  long double auc = 0.0L;
  for (std::size_t i = pts.size(); i-- > 1;) {
    auc += static_cast<long double>(pts[i].fraction - pts[i - 1].fraction) *
           (static_cast<long double>(pts[i].value) + static_cast<long double>(pts[i - 1].value)) /
           2.0L;
  }
  return static_cast<double>(auc);
}

// Replacement MSE-retention AUC for an explicit retention order: value at
// grid point i is (sum of the first ceil(i*T/(g-1)) squared errors) / T.
inline double replacement_rauc_for_order(const std::vector<double>& sq_errors,
                                         const std::vector<std::size_t>& order,
                                         std::size_t grid_size) {
  const std::size_t t = order.size();
  const std::size_t g1 = grid_size - 1;
  std::vector<double> values(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const std::size_t k = (i * t + g1 - 1) / g1;
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) sum += sq_errors[order[j]];
    values[i] = sum / static_cast<double>(t);
  }
  double auc = 0.0;
  for (std::size_t i = 0; i + 1 < grid_size; ++i)
    auc += (values[i] + values[i + 1]) / (2.0 * static_cast<double>(g1));
  return auc;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline uqeval::PredictionRecord random_record(std::mt19937_64& rng, std::size_t m,
                                              const std::string& id = "r") {
  std::vector<std::pair<double, double>> members;
  for (std::size_t k = 0; k < m; ++k)
    members.emplace_back(uniform(rng, -3.0, 3.0), uniform(rng, 0.1, 4.0));
  return record(id, uniform(rng, -3.0, 3.0), std::move(members));
}

inline uqeval::EvaluationSet random_set(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::vector<uqeval::PredictionRecord> records;
  for (std::size_t i = 0; i < n; ++i)
    records.push_back(random_record(rng, m, std::to_string(i)));
  return uqeval::validate_set(std::move(records));
}

}  // namespace testutil
