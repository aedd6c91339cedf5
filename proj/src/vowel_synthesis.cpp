#include "glotbench/vowel_synthesis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "glotbench/error.hpp"
#include "glotbench/spectral.hpp"

namespace glotbench {

namespace {

// Male formant targets; F1 fixed by the benchmark, F2-F5 typical values.
constexpr std::array<Formant, 5> kFormantsA{{{728, 80}, {1090, 90}, {2440, 120}, {3300, 160}, {3700, 200}}};
constexpr std::array<Formant, 5> kFormantsE{{{520, 80}, {1800, 100}, {2480, 120}, {3300, 160}, {3700, 200}}};
constexpr std::array<Formant, 5> kFormantsI{{{304, 80}, {2200, 100}, {2950, 120}, {3400, 160}, {3750, 200}}};
constexpr std::array<Formant, 5> kFormantsU{{{218, 80}, {870, 90}, {2240, 120}, {3300, 160}, {3700, 200}}};

const std::array<Formant, 5>& formant_table(char label) {
  switch (label) {
    case 'a': return kFormantsA;
    case 'e': return kFormantsE;
    case 'i': return kFormantsI;
    case 'u': return kFormantsU;
    default:
      throw Error(ErrorKind::unknown_vowel, std::string("unknown vowel '") + label + "'");
  }
}

}  // namespace

double vowel_f1(char label) { return formant_table(label)[0].freq_hz; }

std::vector<double> resonator_polynomial(std::span<const Formant> formants, int fs) {
  std::vector<double> a{1.0};
  for (const Formant& f : formants) {
    const double r = std::exp(-std::numbers::pi * f.bandwidth_hz / fs);
    const double theta = 2.0 * std::numbers::pi * f.freq_hz / fs;
    const double section[3] = {1.0, -2.0 * r * std::cos(theta), r * r};
    std::vector<double> next(a.size() + 2, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < 3; ++j) next[i + j] += a[i] * section[j];
    }
    a = std::move(next);
  }
  return a;
}

VowelFilter builtin_vowel(char label, int fs) {
  const auto& table = formant_table(label);
  VowelFilter filter;
  filter.label = label;
  filter.formants = table;
  filter.f1_hz = table[0].freq_hz;
  filter.ar_coeffs = resonator_polynomial(table, fs);
  return filter;
}

void SynthesisCondition::validate() const {
  lf.validate();
  formant_table(vowel);
  if (!(std::abs(gci_error_frac) < 0.5)) {
    throw Error(ErrorKind::invalid_parameter, "|gci_error_frac| must be < 0.5");
  }
  if (n_periods < 5) throw Error(ErrorKind::invalid_parameter, "n_periods must be >= 5");
  if (std::isnan(snr_db)) throw Error(ErrorKind::invalid_parameter, "snr_db is NaN");
}

double signal_power(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc / static_cast<double>(x.size());
}

GaussianNoise::GaussianNoise(std::uint64_t seed) : engine_(seed) {}

double GaussianNoise::uniform() {
  // 53 random bits -> (0, 1)
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianNoise::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

SampledSignal add_noise(const SampledSignal& x, double snr_db, std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0) return x;
  if (!std::isfinite(snr_db)) {
    throw Error(ErrorKind::invalid_parameter, "snr_db must be finite or +inf");
  }
  const double power = signal_power(x.samples);
  if (!(power > 0.0)) {
    throw Error(ErrorKind::silent_signal, "cannot set an SNR on a silent signal");
  }
  const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
  GaussianNoise noise(seed);
  SampledSignal y = x;
  for (double& v : y.samples) v += sigma * noise.next();
  return y;
}

std::vector<std::size_t> perturb_gcis(std::span<const std::size_t> gcis,
                                      double gci_error_frac, std::size_t t0_samples,
                                      std::size_t signal_length) {
  const long shift = std::lround(gci_error_frac * static_cast<double>(t0_samples));
  std::vector<std::size_t> out;
  out.reserve(gcis.size());
  for (std::size_t g : gcis) {
    const long moved = static_cast<long>(g) + shift;
    if (moved < 0 || moved >= static_cast<long>(signal_length)) {
      throw Error(ErrorKind::out_of_range,
                  "shifted GCI " + std::to_string(moved) + " leaves the signal");
    }
    const auto idx = static_cast<std::size_t>(moved);
    if (!out.empty() && idx <= out.back()) {
      throw Error(ErrorKind::out_of_range, "shifted GCIs are not increasing");
    }
    out.push_back(idx);
  }
  return out;
}

Utterance synthesize_utterance(const SynthesisCondition& cond) {
  cond.validate();
  const std::size_t total = cond.n_periods + 2 * cond.warmup_periods;
  const SampledSignal train = lf_pulse_train(cond.lf, total, cond.fs);
  const VowelFilter filter = builtin_vowel(cond.vowel, cond.fs);
  const std::vector<double> speech = allpole_filter(train.samples, filter.ar_coeffs);

  const std::size_t t0 = period_samples(cond.lf.f0, cond.fs);
  const std::size_t begin = cond.warmup_periods * t0;
  const std::size_t end = begin + cond.n_periods * t0;

  Utterance u;
  u.filter = filter;
  u.source.fs = cond.fs;
  u.source.samples.assign(train.samples.begin() + static_cast<long>(begin),
                          train.samples.begin() + static_cast<long>(end));
  for (std::size_t p = 0; p < cond.n_periods; ++p) {
    u.source.gcis.push_back(train.gcis[p + cond.warmup_periods] - begin);
  }
  u.speech.fs = cond.fs;
  u.speech.samples.assign(speech.begin() + static_cast<long>(begin),
                          speech.begin() + static_cast<long>(end));
  u.speech.gcis = u.source.gcis;
  u.speech = add_noise(u.speech, cond.snr_db, cond.seed);
  return u;
}

SampledSignal synthesize(const SynthesisCondition& cond) {
  return synthesize_utterance(cond).speech;
}

}  // namespace glotbench
