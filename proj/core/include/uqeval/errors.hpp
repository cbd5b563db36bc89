#pragma once

#include <stdexcept>
#include <string>

namespace uqeval {

/// Every failure the library can raise, by name. The CLI maps categories
/// to exit codes (io -> 1, validation -> 2, precondition -> 3).
enum class errc {
  // input / output
  io_error,
  schema_error,
  parse_error,
  // structural validation
  empty_set,
  ragged_ensemble,
  negative_variance,
  non_finite,
  duplicate_id,
  invalid_config,
  // metric preconditions
  insufficient_members,
  zero_variance,
  measure_unavailable,
  too_many_bins,
  invalid_bin_count,
  empty_subset,
  zero_rmv_bin,
  insufficient_data,
  zero_mean_sigma,
  non_positive_variance,
  length_mismatch,
  wrong_curve_kind,
  invalid_threshold,
  zero_rmv_subset,
};

enum class error_category { io, validation, precondition };

constexpr error_category category(errc code) noexcept {
  switch (code) {
    case errc::io_error:
    case errc::schema_error:
    case errc::parse_error:
      return error_category::io;
    case errc::empty_set:
    case errc::ragged_ensemble:
    case errc::negative_variance:
    case errc::non_finite:
    case errc::duplicate_id:
    case errc::invalid_config:
      return error_category::validation;
    default:
      return error_category::precondition;
  }
}

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace uqeval
