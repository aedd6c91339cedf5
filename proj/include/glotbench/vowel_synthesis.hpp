#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "glotbench/glottal_model.hpp"
#include "glotbench/signal.hpp"

namespace glotbench {

struct Formant {
  double freq_hz;
  double bandwidth_hz;
};

/// All-pole vowel filter 1/A(z).
struct VowelFilter {
  char label = 'a';
  std::vector<double> ar_coeffs;  // A(z), leading 1
  double f1_hz = 0.0;
  std::array<Formant, 5> formants{};
};

inline constexpr std::array<char, 4> kVowels{'a', 'e', 'i', 'u'};
inline constexpr double kClean = std::numeric_limits<double>::infinity();

/// Nominal first formant of a built-in vowel (728, 520, 304, 218 Hz).
double vowel_f1(char label);

/// Order-10 filter from five conjugate pole pairs. Throws unknown_vowel.
VowelFilter builtin_vowel(char label, int fs = 8000);

/// A(z) = prod (1 - 2 r cos(theta) z^-1 + r^2 z^-2), r = exp(-pi bw/fs).
std::vector<double> resonator_polynomial(std::span<const Formant> formants, int fs);

struct SynthesisCondition {
  LfParams lf;
  char vowel = 'a';
  double snr_db = kClean;        // +inf for clean speech
  double gci_error_frac = 0.0;   // applied by the caller via perturb_gcis
  std::uint64_t seed = 0;
  std::size_t n_periods = 10;
  int fs = 8000;
  std::size_t warmup_periods = 2;  // synthesised on each side and cropped

  void validate() const;
};

/// Speech and the clean LF source it was generated from, both carrying
/// the true GCIs.
struct Utterance {
  SampledSignal speech;
  SampledSignal source;
  VowelFilter filter;
};

/// Filters an LF train of n_periods + 2*warmup_periods through the vowel,
/// crops the warm-up periods on both sides and adds noise at snr_db.
Utterance synthesize_utterance(const SynthesisCondition& cond);

/// The speech part of synthesize_utterance.
SampledSignal synthesize(const SynthesisCondition& cond);

double signal_power(std::span<const double> x);

/// Adds white Gaussian noise of variance power(x)/10^(snr/10). Infinite
/// SNR returns x unchanged. Throws silent_signal for a zero-power input.
SampledSignal add_noise(const SampledSignal& x, double snr_db, std::uint64_t seed);

/// Shifts every GCI by round(frac * t0_samples). Throws out_of_range if an
/// index leaves [0, signal_length).
std::vector<std::size_t> perturb_gcis(std::span<const std::size_t> gcis,
                                      double gci_error_frac,
                                      std::size_t t0_samples,
                                      std::size_t signal_length);

/// Portable standard-normal stream: mt19937_64 feeding Box-Muller, so the
/// same seed yields the same noise with any standard library.
class GaussianNoise {
 public:
  explicit GaussianNoise(std::uint64_t seed);
  double next();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
  double uniform();
};

}  // namespace glotbench
