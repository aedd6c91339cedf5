#include <doctest.h>

#include <cmath>

#include "glotbench/error.hpp"
#include "glotbench/glottal_model.hpp"
#include "glotbench/harness.hpp"
#include "glotbench/iaif.hpp"
#include "glotbench/metrics.hpp"
#include "glotbench/vowel_synthesis.hpp"
#include "glotbench/zzt.hpp"

using namespace glotbench;

namespace {

MagnitudeSpectrum scored_spectrum(const Frame& speech_frame, const IaifConfig& cfg,
                                  std::optional<double> f0 = std::nullopt) {
  const auto source = iaif(speech_frame.samples, speech_frame.fs, cfg, f0);
  return magnitude_spectrum_db(one_period_segment(source, speech_frame.gci_offset),
                               speech_frame.fs);
}

double mean_sd(const SampledSignal& speech, const LfParams& lf) {
  const auto ref = reference_spectrum(lf, speech.fs);
  double acc = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 1; k + 1 < speech.gcis.size(); ++k) {
    const auto est = normalize_mean_db(scored_spectrum(extract_frame(speech, k), IaifConfig{}));
    acc += spectral_distortion(est, ref);
    ++n;
  }
  return acc / static_cast<double>(n);
}

SampledSignal clean_speech(double f0, char vowel) {
  SynthesisCondition c;
  c.lf.f0 = f0;
  c.vowel = vowel;
  return synthesize(c);
}

}  // namespace

TEST_CASE("iaif keeps the frame length") {
  const auto s = clean_speech(100.0, 'a');
  const auto f = extract_frame(s, 3);
  CHECK(iaif(f.samples, 8000, IaifConfig{}).size() == f.samples.size());
}

TEST_CASE("iaif is deterministic") {
  const auto s = clean_speech(120.0, 'e');
  const auto f = extract_frame(s, 4);
  CHECK(iaif(f.samples, 8000, IaifConfig{}) == iaif(f.samples, 8000, IaifConfig{}));
}

TEST_CASE("iaif rejects a silent frame") {
  try {
    iaif(std::vector<double>(160, 0.0), 8000, IaifConfig{});
    FAIL("no error raised");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate_frame);
  }
}

TEST_CASE("iaif configuration is validated") {
  const auto s = clean_speech(100.0, 'a');
  const auto f = extract_frame(s, 3);
  IaifConfig bad;
  bad.rho = 1.0;
  CHECK_THROWS_AS(iaif(f.samples, 8000, bad), Error);
  bad = IaifConfig{};
  bad.vt_order = 2;
  CHECK_THROWS_AS(iaif(f.samples, 8000, bad), Error);
  IaifConfig with_dap;
  with_dap.use_dap = true;
  CHECK_THROWS_AS(iaif(f.samples, 8000, with_dap), Error);
  CHECK(iaif(f.samples, 8000, with_dap, 100.0).size() == f.samples.size());
}

TEST_CASE("clean /a/ estimate finds the glottal formant") {
  const LfParams lf{100.0};
  const auto s = clean_speech(100.0, 'a');
  const double ref = reference_glottal_formant(lf, 8000);
  for (std::size_t k = 1; k + 1 < s.gcis.size(); ++k) {
    const double fg = detect_glottal_formant(scored_spectrum(extract_frame(s, k), IaifConfig{}), 100.0);
    CHECK(std::abs(fg - ref) / ref <= 0.10);
  }
}

TEST_CASE("a flat vocal tract is no harder than a vowel") {
  const LfParams lf{100.0};
  auto flat = lf_pulse_train(lf, 10, 8000);
  const double sd_flat = mean_sd(flat, lf);
  const double sd_a = mean_sd(clean_speech(100.0, 'a'), lf);
  CHECK(sd_flat <= sd_a);
  // Frozen regression values.
  CHECK(sd_flat == doctest::Approx(3.85356).epsilon(1e-3));
  CHECK(sd_a == doctest::Approx(8.11301).epsilon(1e-3));
}

TEST_CASE("iaif over a whole signal covers the interior GCIs") {
  const auto s = clean_speech(100.0, 'i');
  REQUIRE(s.gcis.size() == 10);
  const auto frames = iaif_full_signal(s, IaifConfig{});
  CHECK(frames.size() == 8);
  CHECK(frames.begin()->first == 1);
  CHECK(frames.rbegin()->first == 8);
  for (const auto& [k, f] : frames) {
    const auto direct = extract_frame(s, k);
    CHECK(f.gci_offset == direct.gci_offset);
    CHECK(f.samples == iaif(direct.samples, 8000, IaifConfig{}));
  }
  SampledSignal short_signal = s;
  short_signal.gcis.resize(4);
  try {
    iaif_full_signal(short_signal, IaifConfig{});
    FAIL("no error raised");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::too_few_gcis);
  }
}

TEST_CASE("iaif degrades at high pitch on /u/") {
  const double sd_low = mean_sd(clean_speech(60.0, 'u'), LfParams{60.0});
  const double sd_high = mean_sd(clean_speech(240.0, 'u'), LfParams{240.0});
  MESSAGE("mean SD /u/: f0=60 " << sd_low << " dB, f0=240 " << sd_high << " dB");
  CHECK(sd_high >= sd_low);
}
