#include "uqeval/synth.hpp"

#include <cmath>
#include <string>

#include "uqeval/parallel.hpp"

namespace uqeval {

namespace {

constexpr double kSqrtTwoPi = 2.506628274631000502415765284811;
constexpr double kSqrtTwo = 1.4142135623730950488016887242097;

inline std::uint64_t splitmix_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// One independent draw stream per record index: generation order cannot
// leak between records, so any chunking of the parallel fill produces the
// same set.
class SubStream {
 public:
  SubStream(std::uint64_t seed, std::uint64_t index)
      : state_(mix64(seed + 0x9E3779B97F4A7C15ull) ^ mix64((index + 1) * 0xD1B54A32D192ED03ull)) {}

  // strictly inside (0, 1)
  double uniform() {
    return static_cast<double>(splitmix_next(state_) >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  double normal(double mean, double sigma) { return mean + sigma * inverse_normal_cdf(uniform()); }

 private:
  std::uint64_t state_;
};

}  // namespace

// Acklam's rational approximation to the probit function, sharpened by a
// single Halley step against the exact CDF. p > 1/2 is reflected into the
// lower tail, where 1 - p is exact (Sterbenz) and 0.5*erfc(-x/sqrt 2)
// evaluates without cancellation.
double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw Error(errc::invalid_config, "probability must lie strictly inside (0, 1)");
  if (p > 0.5) return -inverse_normal_cdf(1.0 - p);

  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  const double err = 0.5 * std::erfc(-x / kSqrtTwo) - p;
  const double u = err * kSqrtTwoPi * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

void validate_config(const SynthConfig& config) {
  auto reject = [](const std::string& what) { throw Error(errc::invalid_config, what); };
  if (config.n < 1) reject("record count must be at least 1");
  if (config.m < 1) reject("ensemble size must be at least 1");
  if (!(config.sigma_lo > 0.0) || !std::isfinite(config.sigma_lo))
    reject("sigma_lo must be positive and finite");
  if (!(config.sigma_hi >= config.sigma_lo) || !std::isfinite(config.sigma_hi))
    reject("sigma_hi must be finite and >= sigma_lo");
  if (!(config.miscalibration > 0.0) || !std::isfinite(config.miscalibration))
    reject("miscalibration factor must be positive and finite");
  if (!(config.shift_fraction >= 0.0 && config.shift_fraction <= 1.0))
    reject("shift_fraction must lie in [0, 1]");
  if (!(config.shift_scale >= 0.0) || !std::isfinite(config.shift_scale))
    reject("shift_scale must be non-negative and finite");
  if (!(config.member_jitter >= 0.0) || !std::isfinite(config.member_jitter))
    reject("member_jitter must be non-negative and finite");
}

EvaluationSet generate(const SynthConfig& config) {
  validate_config(config);

  const std::size_t n = config.n;
  const std::size_t shift_count = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::llround(config.shift_fraction * static_cast<double>(n))));
  const std::size_t first_shifted = n - shift_count;
  const double c2 = config.miscalibration * config.miscalibration;

  std::vector<PredictionRecord> records(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SubStream stream(config.seed, i);
      const double sigma = config.sigma_lo + (config.sigma_hi - config.sigma_lo) * stream.uniform();
      const double latent = -5.0 + 10.0 * stream.uniform();
      const double bias = i >= first_shifted ? config.shift_scale : 0.0;
      // the data shifts; the members below do not track it
      const double y_true = stream.normal(latent + bias, sigma);

      PredictionRecord& r = records[i];
      r.id = std::to_string(i);
      r.y_true = y_true;
      r.members.resize(config.m);
      for (MemberPrediction& member : r.members) {
        // jitter scales with sigma: member disagreement tracks noise level
        member.mean = stream.normal(latent, config.member_jitter * sigma);
        member.variance = c2 * sigma * sigma;
      }
    }
  });

  return validate_set(std::move(records));
}

}  // namespace uqeval
