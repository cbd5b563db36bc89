#include "uqeval/errors.hpp"

namespace uqeval {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::io_error: return "IoError";
    case errc::schema_error: return "SchemaError";
    case errc::parse_error: return "ParseError";
    case errc::empty_set: return "EmptySet";
    case errc::ragged_ensemble: return "RaggedEnsemble";
    case errc::negative_variance: return "NegativeVariance";
    case errc::non_finite: return "NonFinite";
    case errc::duplicate_id: return "DuplicateId";
    case errc::invalid_config: return "InvalidConfig";
    case errc::insufficient_members: return "InsufficientMembers";
    case errc::zero_variance: return "ZeroVariance";
    case errc::measure_unavailable: return "MeasureUnavailable";
    case errc::too_many_bins: return "TooManyBins";
    case errc::invalid_bin_count: return "InvalidBinCount";
    case errc::empty_subset: return "EmptySubset";
    case errc::zero_rmv_bin: return "ZeroRMVBin";
    case errc::insufficient_data: return "InsufficientData";
    case errc::zero_mean_sigma: return "ZeroMeanSigma";
    case errc::non_positive_variance: return "NonPositiveVariance";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::wrong_curve_kind: return "WrongCurveKind";
    case errc::invalid_threshold: return "InvalidThreshold";
    case errc::zero_rmv_subset: return "ZeroRMVSubset";
  }
  return "Error";
}

}  // namespace uqeval
