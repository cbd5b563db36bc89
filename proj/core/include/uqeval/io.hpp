#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uqeval/calibration.hpp"
#include "uqeval/retention.hpp"
#include "uqeval/types.hpp"

namespace uqeval {

struct MeasureSummary {
  double r_auc = 0.0;
  double f1_auc = 0.0;
  double f1_at_95 = 0.0;
};

/// Settings echoed into every report; the numbers are not interpretable
/// without them.
struct ReportConfig {
  std::size_t n_bins = 20;
  double threshold = 1.0;
  std::size_t grid_size = 101;
  LlfuMode llfu_mode = LlfuMode::target;
  std::string mwse_measure;
  std::optional<std::uint64_t> seed;  ///< present when the input is synthetic
};

struct MetricReport {
  std::string dataset;
  std::size_t member_count = 0;
  std::map<std::string, MeasureSummary> measures;  ///< keyed by measure name
  CalibrationReport calibration;
  double mwse_value = 0.0;
  ReportConfig config;
};

/// Reads `id,y_true,mean_0,var_0,...,mean_{M-1},var_{M-1}` with M inferred
/// from the header; row order preserved. Dot-decimal parsing only, no
/// quoting dialect. Throws schema_error / parse_error with row and column.
std::vector<PredictionRecord> read_csv(std::istream& in);

/// One object per line: {"id":..., "y_true":..., "members":[[mean,var],...]}.
/// Numeric ids are stringified. Throws parse_error with the line number,
/// schema_error for missing or mistyped keys.
std::vector<PredictionRecord> read_jsonl(std::istream& in);

void write_csv(const EvaluationSet& set, std::ostream& out);
void write_jsonl(const EvaluationSet& set, std::ostream& out);

/// Deterministic JSON document: keys sorted, reals round-trip exactly,
/// infinity rendered as the string "inf". Equal reports serialize to
/// byte-identical documents.
std::string write_report(const MetricReport& report);

/// CSV document: header `fraction,value`, rows ascending by fraction,
/// trailing comment row `# auc=<value>`.
std::string write_curve(const RetentionCurve& curve);

/// Shortest representation that parses back to exactly the same double;
/// infinities render as "inf"/"-inf".
std::string format_double(double value);

}  // namespace uqeval
