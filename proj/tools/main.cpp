// uqeval — evaluate predictive uncertainty and shift robustness of
// regression prediction files.
//
//   uqeval synth    --n 100000 --m 10 --seed 42 --out preds.csv
//   uqeval evaluate --input preds.csv --measures tvar,llfu --out report.json
//   uqeval retention --input preds.csv --curve mse --curve f1 --out-dir curves/

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "uqeval/uqeval.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOptions {
  std::string input;
  std::string format = "auto";  // csv | jsonl | auto (by extension)
  bool verbose = false;
};

struct EvaluateOptions {
  CommonOptions common;
  std::vector<std::string> measures;  // empty -> default measure for the set
  std::size_t n_bins = 20;
  double threshold = 1.0;
  std::size_t grid_size = 101;
  std::string llfu_mode = "target";
  std::optional<double> llfu_floor;
  std::string mwse_measure;  // empty -> default measure
  std::string dataset;       // empty -> input filename
  std::string out = "-";
};

struct RetentionOptions {
  CommonOptions common;
  std::vector<std::string> curves{"mse"};
  std::string measure;  // empty -> default measure
  double threshold = 1.0;
  std::size_t grid_size = 101;
  std::string llfu_mode = "target";
  std::optional<double> llfu_floor;
  std::string out;      // single-curve output path
  std::string out_dir = ".";
};

struct SynthOptions {
  uqeval::SynthConfig config;
  std::string out;
  std::string format = "csv";
  bool verbose = false;
};

int exit_code_for(const uqeval::Error& e) {
  switch (uqeval::category(e.code())) {
    case uqeval::error_category::io: return 1;
    case uqeval::error_category::validation: return 2;
    case uqeval::error_category::precondition: return 3;
  }
  return 1;
}

bool is_jsonl(const CommonOptions& common) {
  if (common.format == "jsonl") return true;
  if (common.format == "csv") return false;
  const std::string ext = fs::path(common.input).extension().string();
  return ext == ".jsonl" || ext == ".ndjson";
}

uqeval::EvaluationSet load_set(const CommonOptions& common) {
  std::ifstream in(common.input, std::ios::binary);
  if (!in) throw uqeval::Error(uqeval::errc::io_error, "cannot open '" + common.input + "'");
  std::vector<uqeval::PredictionRecord> records =
      is_jsonl(common) ? uqeval::read_jsonl(in) : uqeval::read_csv(in);
  uqeval::EvaluationSet set = uqeval::validate_set(std::move(records));
  if (common.verbose)
    std::cerr << "read " << set.size() << " records (M=" << set.member_count() << ") from "
              << common.input << "\n";
  return set;
}

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw uqeval::Error(uqeval::errc::io_error, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw uqeval::Error(uqeval::errc::io_error, "write to '" + path + "' failed");
}

uqeval::UncertaintyVector measure_vector(const uqeval::EvaluationSet& set,
                                         const std::string& name, const std::string& llfu_mode,
                                         const std::optional<double>& llfu_floor) {
  const uqeval::Measure measure = uqeval::parse_measure(name);
  if (measure == uqeval::Measure::llfu) {
    uqeval::LlfuConfig config;
    config.mode = uqeval::parse_llfu_mode(llfu_mode);
    config.variance_floor = llfu_floor;
    return uqeval::llfu_vector(set, config);
  }
  return uqeval::uncertainty_vector(set, measure);
}

// synth writes its config next to the data; evaluate echoes the seed back
// into the report when it finds one.
std::optional<std::uint64_t> sidecar_seed(const std::string& input) {
  const fs::path sidecar = fs::path(input).concat(".json");
  std::error_code ec;
  if (!fs::exists(sidecar, ec)) return std::nullopt;
  std::ifstream in(sidecar);
  if (!in) return std::nullopt;
  const json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
  const auto synth = doc.find("synth");
  if (synth == doc.end() || !synth->is_object()) return std::nullopt;
  const auto seed = synth->find("seed");
  if (seed == synth->end() || !seed->is_number_unsigned()) return std::nullopt;
  return seed->get<std::uint64_t>();
}

int run_evaluate(const EvaluateOptions& opt) {
  const uqeval::EvaluationSet set = load_set(opt.common);
  const std::string default_name = uqeval::measure_name(uqeval::default_measure(set));

  uqeval::MetricReport report;
  report.dataset = opt.dataset.empty() ? fs::path(opt.common.input).filename().string()
                                       : opt.dataset;
  report.member_count = set.member_count();
  report.config.n_bins = opt.n_bins;
  report.config.threshold = opt.threshold;
  report.config.grid_size = opt.grid_size;
  report.config.llfu_mode = uqeval::parse_llfu_mode(opt.llfu_mode);
  report.config.seed = sidecar_seed(opt.common.input);

  const uqeval::UncertaintyVector variances =
      uqeval::uncertainty_vector(set, uqeval::default_measure(set));
  report.calibration = uqeval::calibration_report(set, variances, opt.n_bins);

  std::vector<std::string> measures = opt.measures;
  if (measures.empty()) measures.push_back(default_name);
  for (const std::string& name : measures) {
    const uqeval::UncertaintyVector unc =
        measure_vector(set, name, opt.llfu_mode, opt.llfu_floor);
    uqeval::MeasureSummary summary;
    summary.r_auc = uqeval::r_auc(uqeval::mse_retention_curve(set, unc, opt.grid_size));
    const uqeval::RetentionCurve f1 =
        uqeval::f1_retention_curve(set, unc, opt.threshold, opt.grid_size);
    summary.f1_auc = f1.auc;
    summary.f1_at_95 = uqeval::f1_at(f1, 0.95);
    report.measures[name] = summary;
    if (opt.common.verbose)
      std::cerr << name << ": r_auc=" << summary.r_auc << " f1_auc=" << summary.f1_auc << "\n";
  }

  const std::string mwse_measure = opt.mwse_measure.empty() ? default_name : opt.mwse_measure;
  report.config.mwse_measure = mwse_measure;
  report.mwse_value = uqeval::mwse(
      set, measure_vector(set, mwse_measure, opt.llfu_mode, opt.llfu_floor));

  write_file(opt.out, uqeval::write_report(report));
  return 0;
}

int run_retention(const RetentionOptions& opt) {
  if (opt.curves.size() > 1 && !opt.out.empty())
    throw uqeval::Error(uqeval::errc::invalid_config,
                        "--out works with a single --curve; use --out-dir for several");

  const uqeval::EvaluationSet set = load_set(opt.common);
  const std::string measure =
      opt.measure.empty() ? uqeval::measure_name(uqeval::default_measure(set)) : opt.measure;
  const uqeval::UncertaintyVector unc =
      measure_vector(set, measure, opt.llfu_mode, opt.llfu_floor);

  const std::string stem = fs::path(opt.common.input).stem().string();
  for (const std::string& kind_name : opt.curves) {
    const uqeval::CurveKind kind = uqeval::parse_curve_kind(kind_name);
    uqeval::RetentionCurve curve;
    switch (kind) {
      case uqeval::CurveKind::mse:
        curve = uqeval::mse_retention_curve(set, unc, opt.grid_size);
        break;
      case uqeval::CurveKind::f1:
        curve = uqeval::f1_retention_curve(set, unc, opt.threshold, opt.grid_size);
        break;
      case uqeval::CurveKind::r3:
        curve = uqeval::r3_curve(
            set, unc, uqeval::uncertainty_vector(set, uqeval::default_measure(set)),
            opt.grid_size);
        break;
      case uqeval::CurveKind::mwse:
        curve = uqeval::mwse_retention_curve(set, unc, opt.grid_size);
        break;
    }
    const std::string path =
        !opt.out.empty() ? opt.out
                         : (fs::path(opt.out_dir) / (stem + "_" + kind_name + ".csv")).string();
    write_file(path, uqeval::write_curve(curve));
    if (opt.common.verbose)
      std::cerr << kind_name << " curve -> " << path << " (auc=" << curve.auc << ")\n";
  }
  return 0;
}

int run_synth(const SynthOptions& opt) {
  const uqeval::EvaluationSet set = uqeval::generate(opt.config);

  std::ostringstream data;
  if (opt.format == "jsonl")
    uqeval::write_jsonl(set, data);
  else
    uqeval::write_csv(set, data);
  write_file(opt.out, data.str());

  const json sidecar = {{"synth",
                         {{"n", opt.config.n},
                          {"m", opt.config.m},
                          {"seed", opt.config.seed},
                          {"sigma_lo", opt.config.sigma_lo},
                          {"sigma_hi", opt.config.sigma_hi},
                          {"miscalibration", opt.config.miscalibration},
                          {"shift_fraction", opt.config.shift_fraction},
                          {"shift_scale", opt.config.shift_scale},
                          {"member_jitter", opt.config.member_jitter},
                          {"format", opt.format}}}};
  write_file(opt.out + ".json", sidecar.dump(2) + "\n");

  if (opt.verbose)
    std::cerr << "wrote " << set.size() << " records (M=" << set.member_count() << ") to "
              << opt.out << "\n";
  return 0;
}

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("-i,--input", common.input, "Prediction file to evaluate")->required();
  cmd->add_option("--format", common.format, "Input format: csv, jsonl or auto (by extension)")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "csv", "jsonl"}));
  cmd->add_flag("-v,--verbose", common.verbose, "Log progress to stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Predictive-uncertainty and shift-robustness metrics for regression models"};
  app.require_subcommand(1);

  EvaluateOptions evaluate;
  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Compute the full metric report for a prediction file");
  add_common(evaluate_cmd, evaluate.common);
  evaluate_cmd
      ->add_option("-m,--measures", evaluate.measures,
                   "Uncertainty measures to summarize (mvar,tvar,varm,epkl,llfu,variance); "
                   "default: tvar for ensembles, variance for single models")
      ->delimiter(',');
  evaluate_cmd->add_option("-b,--bins", evaluate.n_bins, "Calibration bin count")
      ->capture_default_str();
  evaluate_cmd
      ->add_option("-t,--threshold", evaluate.threshold,
                   "Acceptable absolute error for F1 curves, in target units")
      ->capture_default_str();
  evaluate_cmd->add_option("-g,--grid", evaluate.grid_size, "Retention grid size")
      ->capture_default_str();
  evaluate_cmd
      ->add_option("--llfu-mode", evaluate.llfu_mode, "llfu mode: target or ensemble-mean")
      ->capture_default_str();
  evaluate_cmd->add_option("--llfu-floor", evaluate.llfu_floor,
                           "Optional variance floor for llfu (must be > 0)");
  evaluate_cmd->add_option("--mwse-measure", evaluate.mwse_measure,
                           "Uncertainty measure weighting MWSE; default as --measures default");
  evaluate_cmd->add_option("--dataset", evaluate.dataset,
                           "Dataset label echoed into the report; default: input filename");
  evaluate_cmd->add_option("-o,--out", evaluate.out, "Report path ('-' for stdout)")
      ->capture_default_str();

  RetentionOptions retention;
  CLI::App* retention_cmd =
      app.add_subcommand("retention", "Write retention-curve CSVs for a prediction file");
  add_common(retention_cmd, retention.common);
  retention_cmd
      ->add_option("-c,--curve", retention.curves, "Curve kind (mse, f1, r3, mwse); repeatable")
      ->capture_default_str();
  retention_cmd
      ->add_option("-m,--measure", retention.measure,
                   "Ranking uncertainty measure; default: tvar for ensembles, variance for "
                   "single models")
      ->capture_default_str();
  retention_cmd
      ->add_option("-t,--threshold", retention.threshold,
                   "Acceptable absolute error for the f1 curve, in target units")
      ->capture_default_str();
  retention_cmd->add_option("-g,--grid", retention.grid_size, "Retention grid size")
      ->capture_default_str();
  retention_cmd
      ->add_option("--llfu-mode", retention.llfu_mode, "llfu mode: target or ensemble-mean")
      ->capture_default_str();
  retention_cmd->add_option("--llfu-floor", retention.llfu_floor,
                            "Optional variance floor for llfu (must be > 0)");
  retention_cmd->add_option("-o,--out", retention.out,
                            "Output path (single --curve only)");
  retention_cmd
      ->add_option("--out-dir", retention.out_dir,
                   "Directory for <input-stem>_<kind>.csv outputs")
      ->capture_default_str();

  SynthOptions synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a deterministic synthetic prediction file");
  synth_cmd->add_option("-n,--n", synth.config.n, "Record count")->capture_default_str();
  synth_cmd->add_option("-m,--m", synth.config.m, "Ensemble size")->capture_default_str();
  synth_cmd->add_option("-s,--seed", synth.config.seed, "Generator seed")->capture_default_str();
  synth_cmd->add_option("--sigma-lo", synth.config.sigma_lo, "Lower true noise sigma")
      ->capture_default_str();
  synth_cmd->add_option("--sigma-hi", synth.config.sigma_hi, "Upper true noise sigma")
      ->capture_default_str();
  synth_cmd
      ->add_option("--miscalibration", synth.config.miscalibration,
                   "Reported variance = c^2 * true variance")
      ->capture_default_str();
  synth_cmd
      ->add_option("--shift-fraction", synth.config.shift_fraction,
                   "Fraction of records with shifted ground truth")
      ->capture_default_str();
  synth_cmd
      ->add_option("--shift-scale", synth.config.shift_scale,
                   "Additive ground-truth bias on shifted records")
      ->capture_default_str();
  synth_cmd->add_option("--jitter", synth.config.member_jitter,
                        "Member-mean spread around the latent mean, relative to the true sigma")
      ->capture_default_str();
  synth_cmd->add_option("-o,--out", synth.out, "Output prediction file")->required();
  synth_cmd->add_option("--format", synth.format, "Output format: csv or jsonl")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "jsonl"}));
  synth_cmd->add_flag("-v,--verbose", synth.verbose, "Log progress to stderr");

  CLI11_PARSE(app, argc, argv);

  try {
    if (evaluate_cmd->parsed()) return run_evaluate(evaluate);
    if (retention_cmd->parsed()) return run_retention(retention);
    if (synth_cmd->parsed()) return run_synth(synth);
  } catch (const uqeval::Error& e) {
    std::cerr << "uqeval: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "uqeval: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
