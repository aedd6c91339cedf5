#include "glotbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "glotbench/error.hpp"

namespace glotbench {

double spectral_distortion(const MagnitudeSpectrum& est, const MagnitudeSpectrum& ref) {
  if (est.fs != 8000 || ref.fs != 8000) {
    throw Error(ErrorKind::mismatched_rate, "spectral distortion is defined at fs = 8000 Hz");
  }
  if (est.size() <= kSdHighHz || ref.size() <= kSdHighHz) {
    throw Error(ErrorKind::invalid_parameter, "spectrum does not reach 4000 Hz");
  }
  double acc = 0.0;
  for (std::size_t f = kSdLowHz; f <= kSdHighHz; ++f) {
    const double d = est.values_db[f] - ref.values_db[f];
    acc += d * d;
  }
  return std::sqrt(2.0 / 8000.0 * acc);
}

double glottal_formant_band_high(double f0) { return std::min(1000.0, 5.0 * f0); }

double detect_glottal_formant(const MagnitudeSpectrum& spec, double f0) {
  const std::size_t lo = 20;
  const std::size_t hi = std::min<std::size_t>(
      static_cast<std::size_t>(std::floor(glottal_formant_band_high(f0))), spec.size() - 1);
  if (hi <= lo + 1) throw Error(ErrorKind::no_peak, "glottal formant band is empty");
  const auto& v = spec.values_db;
  std::size_t best = lo;
  for (std::size_t f = lo + 1; f <= hi; ++f) {
    if (v[f] > v[best]) best = f;
  }
  if (best == lo || best == hi) {
    throw Error(ErrorKind::no_peak, "no glottal formant peak inside the search band");
  }
  const double left = v[best - 1], mid = v[best], right = v[best + 1];
  const double denom = left - 2.0 * mid + right;
  double delta = 0.0;
  if (denom < 0.0) delta = 0.5 * (left - right) / denom;
  return static_cast<double>(best) + std::clamp(delta, -0.5, 0.5);
}

std::optional<double> FgError::rel_error() const {
  if (!fg_est) return std::nullopt;
  return (*fg_est - fg_ref) / fg_ref;
}

FgError FgError::from_estimate(double est, double ref) {
  if (!(ref > 0.0)) throw Error(ErrorKind::invalid_parameter, "reference Fg must be positive");
  return FgError{est, ref};
}

FgError FgError::failure(double ref) {
  if (!(ref > 0.0)) throw Error(ErrorKind::invalid_parameter, "reference Fg must be positive");
  return FgError{std::nullopt, ref};
}

double determination_rate(std::span<const FgError> errors, double bound) {
  if (errors.empty()) throw Error(ErrorKind::empty_input, "determination rate of no frames");
  std::size_t hits = 0;
  for (const FgError& e : errors) {
    const auto r = e.rel_error();
    if (r && std::abs(*r) <= bound) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(errors.size());
}

double determination_rate(std::span<const double> rel_errors, double bound) {
  if (rel_errors.empty()) throw Error(ErrorKind::empty_input, "determination rate of no frames");
  const auto hits = std::count_if(rel_errors.begin(), rel_errors.end(),
                                  [bound](double r) { return std::abs(r) <= bound; });
  return static_cast<double>(hits) / static_cast<double>(rel_errors.size());
}

std::size_t ErrorHistogram::total() const {
  std::size_t n = underflow + overflow + failures;
  for (std::size_t c : counts) n += c;
  return n;
}

double ErrorHistogram::bin_center(std::size_t i) const {
  return lo + (static_cast<double>(i) + 0.5) * bin_width;
}

namespace {

ErrorHistogram empty_histogram(double bin_width, double lo, double hi) {
  if (!(bin_width > 0.0) || !(hi > lo)) {
    throw Error(ErrorKind::invalid_parameter, "histogram range or bin width invalid");
  }
  ErrorHistogram h;
  h.lo = lo;
  h.hi = hi;
  h.bin_width = bin_width;
  h.counts.assign(static_cast<std::size_t>(std::llround((hi - lo) / bin_width)), 0);
  return h;
}

void add(ErrorHistogram& h, double r) {
  if (r < h.lo) {
    ++h.underflow;
  } else if (r > h.hi) {
    ++h.overflow;
  } else {
    auto i = static_cast<std::size_t>(std::floor((r - h.lo) / h.bin_width));
    h.counts[std::min(i, h.counts.size() - 1)]++;
  }
}

}  // namespace

ErrorHistogram error_histogram(std::span<const double> rel_errors, double bin_width,
                               double lo, double hi) {
  if (rel_errors.empty()) throw Error(ErrorKind::empty_input, "histogram of no values");
  ErrorHistogram h = empty_histogram(bin_width, lo, hi);
  for (double r : rel_errors) add(h, r);
  return h;
}

ErrorHistogram error_histogram(std::span<const FgError> errors, double bin_width, double lo,
                               double hi) {
  if (errors.empty()) throw Error(ErrorKind::empty_input, "histogram of no values");
  ErrorHistogram h = empty_histogram(bin_width, lo, hi);
  for (const FgError& e : errors) {
    if (const auto r = e.rel_error()) {
      add(h, *r);
    } else {
      ++h.failures;
    }
  }
  return h;
}

void write_histogram_csv(std::ostream& out, const ErrorHistogram& h) {
  out << "bin_center,count\n";
  char line[64];
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    std::snprintf(line, sizeof line, "%.4f,%zu\n", h.bin_center(i), h.counts[i]);
    out << line;
  }
}

}  // namespace glotbench
