#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "glotbench/spectral.hpp"

namespace glotbench {

/// Lower and upper edges of the spectral distortion sum, in Hz.
inline constexpr std::size_t kSdLowHz = 20;
inline constexpr std::size_t kSdHighHz = 4000;

/// sqrt((2/8000) * sum_{f=20}^{4000} (est_db(f) - ref_db(f))^2). Inputs are
/// expected to be gain-normalised already (see normalize_mean_db). Throws
/// mismatched_rate unless both spectra are at 8000 Hz.
double spectral_distortion(const MagnitudeSpectrum& est, const MagnitudeSpectrum& ref);

/// Upper edge of the glottal formant search band: min(1000, 5 f0).
double glottal_formant_band_high(double f0);

/// Peak of the spectrum over [20, min(1000, 5 f0)] Hz, refined by a
/// parabola through the three bins around the maximum. Throws no_peak when
/// the maximum sits on a band edge (flat or monotone band).
double detect_glottal_formant(const MagnitudeSpectrum& spec, double f0);

/// A missing fg_est marks a detection failure.
struct FgError {
  std::optional<double> fg_est;
  double fg_ref = 0.0;

  std::optional<double> rel_error() const;
  static FgError from_estimate(double est, double ref);
  static FgError failure(double ref);
};

/// Fraction of entries with |rel_error| <= bound; failures count as misses.
double determination_rate(std::span<const FgError> errors, double bound = 0.10);
double determination_rate(std::span<const double> rel_errors, double bound = 0.10);

struct ErrorHistogram {
  double lo = -0.5;
  double hi = 0.5;
  double bin_width = 0.02;
  std::vector<std::size_t> counts;
  std::size_t underflow = 0;
  std::size_t overflow = 0;
  std::size_t failures = 0;  // detections with no estimate

  std::size_t total() const;
  double bin_center(std::size_t i) const;
};

/// Relative-error histogram; values outside [lo, hi) go to the overflow
/// counters (hi itself is kept in the last bin).
ErrorHistogram error_histogram(std::span<const double> rel_errors, double bin_width = 0.02,
                               double lo = -0.5, double hi = 0.5);
ErrorHistogram error_histogram(std::span<const FgError> errors, double bin_width = 0.02,
                               double lo = -0.5, double hi = 0.5);

/// CSV `bin_center,count`; overflow counters are not written.
void write_histogram_csv(std::ostream& out, const ErrorHistogram& h);

}  // namespace glotbench
