#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "glotbench/error.hpp"
#include "glotbench/glottal_model.hpp"
#include "test_support.hpp"

using namespace glotbench;

namespace {

double period_sum(const SampledSignal& s) {
  return std::accumulate(s.samples.begin(), s.samples.end(), 0.0);
}

}  // namespace

TEST_CASE("lf_pulse spans one period of round(fs/f0) samples") {
  CHECK(lf_pulse(LfParams{100.0, 1.0, 0.6, 0.67, 0.05}, 8000).size() == 80);
  CHECK(lf_pulse(LfParams{100.0, 1.0, 0.4, 0.8, 0.02}, 8000).size() == 80);
  CHECK(lf_pulse(LfParams{133.0, 1.0, 0.6, 0.67, 0.05}, 8000).size() == 60);
}

TEST_CASE("lf_pulse reaches -ee at the GCI sample") {
  const LfParams p{100.0, 1.0, 0.6, 0.67, 0.05};
  const auto s = lf_pulse(p, 8000);
  REQUIRE(te_index(p, 8000) == 48);
  CHECK(s.samples[48] == doctest::Approx(-1.0).epsilon(0.02));
  REQUIRE(s.gcis.size() == 1);
  CHECK(s.gcis[0] == 48);
  // The GCI is the most negative sample of the period.
  CHECK(std::min_element(s.samples.begin(), s.samples.end()) - s.samples.begin() == 48);
}

TEST_CASE("lf_pulse has zero net flow") {
  const LfParams p{100.0, 1.0, 0.6, 0.67, 0.05};
  CHECK(std::abs(period_sum(lf_pulse(p, 8000)) / 8000.0) <= 1e-6 * p.ee / p.f0);
}

TEST_CASE("lf_pulse flow stays non-negative and closes") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> f0(60, 300), oq(0.3, 0.9), am(0.55, 0.95), qa(0, 0.3);
  for (int trial = 0; trial < 40; ++trial) {
    const LfParams p{f0(rng), 1.0, oq(rng), am(rng), qa(rng)};
    const auto s = lf_pulse(p, 8000);
    double flow = 0.0, peak = 0.0;
    for (double v : s.samples) peak = std::max(peak, std::abs(flow += v));
    flow = 0.0;
    for (double v : s.samples) {
      flow += v;
      CHECK(flow >= -1e-6 * peak);
    }
    CHECK(std::abs(flow) <= 1e-6 * peak);
  }
}

TEST_CASE("lf_pulse scales linearly with ee") {
  LfParams p;
  const auto a = lf_pulse(p, 8000);
  p.ee = 7.3;
  const auto b = lf_pulse(p, 8000);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(b.samples[i] == doctest::Approx(7.3 * a.samples[i]));
}

TEST_CASE("lf_pulse rejects invalid parameters") {
  auto kind_of = [](LfParams p, int fs = 8000) {
    try {
      lf_pulse(p, fs);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::empty_input;
  };
  CHECK(kind_of({-1.0, 1.0, 0.6, 0.67, 0.05}) == ErrorKind::invalid_parameter);
  CHECK(kind_of({100.0, 0.0, 0.6, 0.67, 0.05}) == ErrorKind::invalid_parameter);
  CHECK(kind_of({100.0, 1.0, 1.0, 0.67, 0.05}) == ErrorKind::invalid_parameter);
  CHECK(kind_of({100.0, 1.0, 0.6, 0.5, 0.05}) == ErrorKind::invalid_parameter);
  CHECK(kind_of({100.0, 1.0, 0.6, 0.67, 1.0}) == ErrorKind::invalid_parameter);
  // 2000 Hz at 8 kHz leaves 4 samples per period.
  CHECK(kind_of({2000.0, 1.0, 0.6, 0.67, 0.05}) == ErrorKind::too_few_samples);
}

TEST_CASE("lf_pulse_train repeats the pulse with GCIs one period apart") {
  const auto t = lf_pulse_train(LfParams{100.0}, 10, 8000);
  CHECK(t.size() == 800);
  REQUIRE(t.gcis.size() == 10);
  for (std::size_t k = 1; k < t.gcis.size(); ++k) CHECK(t.gcis[k] - t.gcis[k - 1] == 80);

  const auto u = lf_pulse_train(LfParams{200.0}, 5, 8000);
  CHECK(u.size() == 200);
  REQUIRE(u.gcis.size() == 5);
  for (std::size_t k = 1; k < u.gcis.size(); ++k) CHECK(u.gcis[k] - u.gcis[k - 1] == 40);

  // Exact periodicity between consecutive GCIs.
  for (std::size_t k = 1; k + 1 < t.gcis.size(); ++k) {
    for (std::size_t i = 0; i < 80; ++i) {
      CHECK(t.samples[t.gcis[k] - 80 + i] == t.samples[t.gcis[k + 1] - 80 + i]);
    }
  }
}

TEST_CASE("reference_glottal_formant matches a dense spectrum argmax") {
  const LfParams p{100.0, 1.0, 0.6, 0.67, 0.05};
  const auto pulse = lf_pulse(p, 8000);
  const auto dense = testing::dense_spectrum_db(pulse.samples, 8000);
  const auto expected = static_cast<double>(testing::argmax_in(dense, 20, 4000));
  CHECK(reference_glottal_formant(p, 8000) == expected);
}

TEST_CASE("reference_glottal_formant ignores amplitude") {
  LfParams p{100.0, 1.0, 0.6, 0.67, 0.05};
  const double a = reference_glottal_formant(p, 8000);
  p.ee = 7.3;
  CHECK(reference_glottal_formant(p, 8000) == a);
}

TEST_CASE("shorter open phase raises the glottal formant") {
  LfParams p{100.0, 1.0, 0.4, 0.67, 0.05};
  const double fg_short = reference_glottal_formant(p, 8000);
  p.oq = 0.8;
  const double fg_long = reference_glottal_formant(p, 8000);
  CHECK(fg_short > fg_long);
  // Oracle: the same comparison on dense spectra.
  auto dense_fg = [](const LfParams& q) {
    const auto s = testing::dense_spectrum_db(lf_pulse(q, 8000).samples, 8000);
    return static_cast<double>(testing::argmax_in(s, 20, 4000));
  };
  CHECK(fg_long == dense_fg(p));
  p.oq = 0.4;
  CHECK(fg_short == dense_fg(p));
}
