#include "uqeval/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>

#include "json.hpp"

namespace uqeval {

namespace {

using nlohmann::json;

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

// strict, locale-independent: the whole cell must be one number
// (from_chars does not take a leading '+'; tolerate it ourselves)
bool parse_cell(std::string_view cell, double& out) {
  if (cell.size() > 1 && cell.front() == '+') cell.remove_prefix(1);
  const char* first = cell.data();
  const char* last = first + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !cell.empty();
}

// reads a line with both \n and \r\n endings; returns false at EOF
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::size_t parse_header(const std::string& header) {
  const std::vector<std::string_view> cols = split_line(header);
  if (cols.size() < 4 || cols[0] != "id" || cols[1] != "y_true")
    throw Error(errc::schema_error,
                "header must start with 'id,y_true' followed by mean_i,var_i pairs");
  if ((cols.size() - 2) % 2 != 0)
    throw Error(errc::schema_error, "odd number of member columns in header");
  const std::size_t member_count = (cols.size() - 2) / 2;
  for (std::size_t k = 0; k < member_count; ++k) {
    const std::string mean_name = "mean_" + std::to_string(k);
    const std::string var_name = "var_" + std::to_string(k);
    if (cols[2 + 2 * k] != mean_name || cols[3 + 2 * k] != var_name)
      throw Error(errc::schema_error, "expected columns '" + mean_name + "," + var_name +
                                          "' at position " + std::to_string(2 + 2 * k));
  }
  return member_count;
}

json parse_json_line(const std::string& line, std::size_t line_no) {
  json obj = json::parse(line, nullptr, false);
  if (obj.is_discarded())
    throw Error(errc::parse_error, "line " + std::to_string(line_no) + ": invalid JSON");
  if (!obj.is_object())
    throw Error(errc::schema_error, "line " + std::to_string(line_no) + ": expected an object");
  return obj;
}

double require_number(const json& obj, const char* key, std::size_t line_no) {
  const auto it = obj.find(key);
  if (it == obj.end())
    throw Error(errc::schema_error,
                "line " + std::to_string(line_no) + ": missing key \"" + key + "\"");
  if (!it->is_number())
    throw Error(errc::schema_error,
                "line " + std::to_string(line_no) + ": \"" + key + "\" must be a number");
  return it->get<double>();
}

// lence may legitimately be +infinity; JSON has no literal for it
json finite_or_inf(double value) {
  if (std::isinf(value)) return json(value > 0 ? "inf" : "-inf");
  return json(value);
}

}  // namespace

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<PredictionRecord> read_csv(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw Error(errc::schema_error, "missing header row");
  const std::size_t member_count = parse_header(line);
  const std::size_t columns = 2 + 2 * member_count;

  std::vector<PredictionRecord> records;
  std::size_t row = 0;
  while (next_line(in, line)) {
    if (line.empty()) continue;
    ++row;
    const std::vector<std::string_view> cells = split_line(line);
    if (cells.size() != columns)
      throw Error(errc::schema_error, "row " + std::to_string(row) + " has " +
                                          std::to_string(cells.size()) + " columns, expected " +
                                          std::to_string(columns));
    PredictionRecord record;
    record.id = std::string(cells[0]);
    if (!parse_cell(cells[1], record.y_true))
      throw Error(errc::parse_error, "row " + std::to_string(row) + ", column y_true: '" +
                                         std::string(cells[1]) + "' is not a number");
    record.members.resize(member_count);
    for (std::size_t k = 0; k < member_count; ++k) {
      if (!parse_cell(cells[2 + 2 * k], record.members[k].mean))
        throw Error(errc::parse_error, "row " + std::to_string(row) + ", column mean_" +
                                           std::to_string(k) + ": '" +
                                           std::string(cells[2 + 2 * k]) + "' is not a number");
      if (!parse_cell(cells[3 + 2 * k], record.members[k].variance))
        throw Error(errc::parse_error, "row " + std::to_string(row) + ", column var_" +
                                           std::to_string(k) + ": '" +
                                           std::string(cells[3 + 2 * k]) + "' is not a number");
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<PredictionRecord> read_jsonl(std::istream& in) {
  std::vector<PredictionRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json obj = parse_json_line(line, line_no);

    PredictionRecord record;
    const auto id_it = obj.find("id");
    if (id_it == obj.end())
      throw Error(errc::schema_error, "line " + std::to_string(line_no) + ": missing key \"id\"");
    if (id_it->is_string())
      record.id = id_it->get<std::string>();
    else if (id_it->is_number_integer() || id_it->is_number_unsigned())
      record.id = id_it->dump();  // numeric row ids are stringified
    else
      throw Error(errc::schema_error,
                  "line " + std::to_string(line_no) + ": \"id\" must be a string or integer");

    record.y_true = require_number(obj, "y_true", line_no);

    const auto members_it = obj.find("members");
    if (members_it == obj.end())
      throw Error(errc::schema_error,
                  "line " + std::to_string(line_no) + ": missing key \"members\"");
    if (!members_it->is_array())
      throw Error(errc::schema_error,
                  "line " + std::to_string(line_no) + ": \"members\" must be an array");
    record.members.reserve(members_it->size());
    for (std::size_t k = 0; k < members_it->size(); ++k) {
      const json& pair = (*members_it)[k];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
        throw Error(errc::schema_error, "line " + std::to_string(line_no) + ": members[" +
                                            std::to_string(k) + "] must be [mean, variance]");
      record.members.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    records.push_back(std::move(record));
  }
  return records;
}

void write_csv(const EvaluationSet& set, std::ostream& out) {
  out << "id,y_true";
  for (std::size_t k = 0; k < set.member_count(); ++k)
    out << ",mean_" << k << ",var_" << k;
  out << '\n';
  for (const PredictionRecord& r : set.records()) {
    out << r.id << ',' << format_double(r.y_true);
    for (const MemberPrediction& p : r.members)
      out << ',' << format_double(p.mean) << ',' << format_double(p.variance);
    out << '\n';
  }
}

void write_jsonl(const EvaluationSet& set, std::ostream& out) {
  for (const PredictionRecord& r : set.records()) {
    json members = json::array();
    for (const MemberPrediction& p : r.members) members.push_back({p.mean, p.variance});
    const json obj = {{"id", r.id}, {"y_true", r.y_true}, {"members", std::move(members)}};
    out << obj.dump() << '\n';
  }
}

std::string write_report(const MetricReport& report) {
  json j;
  j["dataset"] = report.dataset;
  j["member_count"] = report.member_count;

  json measures = json::object();
  for (const auto& [name, summary] : report.measures) {
    measures[name] = {{"r_auc", summary.r_auc},
                      {"f1_auc", summary.f1_auc},
                      {"f1_at_95", summary.f1_at_95}};
  }
  j["measures"] = std::move(measures);

  json calibration;
  calibration["ence"] = report.calibration.ence;
  calibration["cv"] = report.calibration.cv;
  calibration["lence"] = finite_or_inf(report.calibration.lence);
  calibration["bin_count"] = report.calibration.partition.stats.size();
  json bins = json::array();
  for (const BinStats& s : report.calibration.partition.stats) {
    bins.push_back({{"rmse", s.rmse},
                    {"rmv", s.rmv},
                    {"lo_sigma", s.sigma_lo},
                    {"hi_sigma", s.sigma_hi},
                    {"size", s.size}});
  }
  calibration["bins"] = std::move(bins);
  j["calibration"] = std::move(calibration);

  j["mwse"] = report.mwse_value;

  json config;
  config["bins"] = report.config.n_bins;
  config["threshold"] = report.config.threshold;
  config["grid"] = report.config.grid_size;
  config["llfu_mode"] = llfu_mode_name(report.config.llfu_mode);
  config["mwse_measure"] = report.config.mwse_measure;
  if (report.config.seed) config["seed"] = *report.config.seed;
  j["config"] = std::move(config);

  return j.dump(2) + "\n";
}

std::string write_curve(const RetentionCurve& curve) {
  std::vector<CurvePoint> points = curve.points;
  std::stable_sort(points.begin(), points.end(),
                   [](const CurvePoint& a, const CurvePoint& b) { return a.fraction < b.fraction; });
  std::string out = "fraction,value\n";
  for (const CurvePoint& p : points)
    out += format_double(p.fraction) + "," + format_double(p.value) + "\n";
  out += "# auc=" + format_double(curve.auc) + "\n";
  return out;
}

}  // namespace uqeval
