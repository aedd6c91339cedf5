#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "glotbench/error.hpp"
#include "glotbench/glottal_model.hpp"
#include "glotbench/metrics.hpp"
#include "test_support.hpp"

using namespace glotbench;

namespace {

MagnitudeSpectrum constant(double db) {
  MagnitudeSpectrum s;
  s.values_db.assign(4001, db);
  return s;
}

MagnitudeSpectrum random_spectrum(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 6.0);
  MagnitudeSpectrum s;
  s.values_db.resize(4001);
  for (double& v : s.values_db) v = g(rng);
  return s;
}

}  // namespace

TEST_CASE("spectral distortion closed forms") {
  const auto ref = constant(-3.0);
  CHECK(spectral_distortion(ref, ref) == 0.0);
  CHECK(spectral_distortion(constant(-2.0), ref) == doctest::Approx(std::sqrt(2.0 * 3981 / 8000)).epsilon(1e-12));
  CHECK(std::abs(spectral_distortion(constant(-2.0), ref) - 0.99762) < 1e-5);
  CHECK(spectral_distortion(constant(-1.0), ref) == doctest::Approx(1.99525).epsilon(1e-5));
}

TEST_CASE("spectral distortion is a distance") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_spectrum(rng), b = random_spectrum(rng), c = random_spectrum(rng);
    CHECK(spectral_distortion(a, b) == spectral_distortion(b, a));
    CHECK(spectral_distortion(a, c) <= spectral_distortion(a, b) + spectral_distortion(b, c) + 1e-12);
  }
}

TEST_CASE("spectral distortion ignores gain after normalisation") {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> g;
  std::vector<double> x(160);
  for (double& v : x) v = g(rng);
  auto y = x;
  for (double& v : y) v *= 3.7;
  const auto ref = normalize_mean_db(magnitude_spectrum_db(lf_pulse(LfParams{}, 8000).samples, 8000));
  const double a = spectral_distortion(normalize_mean_db(magnitude_spectrum_db(x, 8000)), ref);
  const double b = spectral_distortion(normalize_mean_db(magnitude_spectrum_db(y, 8000)), ref);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("spectral distortion requires 8 kHz spectra") {
  auto a = constant(0.0);
  a.fs = 16000;
  try {
    spectral_distortion(a, constant(0.0));
    FAIL("no error raised");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::mismatched_rate);
  }
}

TEST_CASE("glottal formant of a constructed parabolic peak") {
  auto s = constant(-40.0);
  for (int f = 100; f <= 200; ++f) s.values_db[f] = -0.01 * (f - 150.3) * (f - 150.3);
  const double fg = detect_glottal_formant(s, 100.0);
  CHECK(std::abs(fg - 150.0) <= 0.5);
  CHECK(fg == doctest::Approx(150.3).epsilon(1e-9));
}

TEST_CASE("flat spectrum has no glottal formant") {
  try {
    detect_glottal_formant(constant(0.0), 100.0);
    FAIL("no error raised");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::no_peak);
  }
}

TEST_CASE("search band stops at min(1000, 5 f0)") {
  CHECK(glottal_formant_band_high(100.0) == 500.0);
  CHECK(glottal_formant_band_high(240.0) == 1000.0);
  auto s = constant(-40.0);
  s.values_db[300] = 0.0;  // inside the band
  s.values_db[700] = 10.0;  // above 5 f0 for f0 = 100
  CHECK(detect_glottal_formant(s, 100.0) == doctest::Approx(300.0).epsilon(1e-3));
  CHECK(detect_glottal_formant(s, 200.0) == doctest::Approx(700.0).epsilon(1e-3));
}

TEST_CASE("glottal formant of an LF pulse matches the reference") {
  const LfParams p{100.0, 1.0, 0.6, 0.67, 0.05};
  const auto s = magnitude_spectrum_db(lf_pulse(p, 8000).samples, 8000);
  CHECK(std::abs(detect_glottal_formant(s, 100.0) - reference_glottal_formant(p, 8000)) <= 1.0);
}

TEST_CASE("determination rate") {
  CHECK(determination_rate(std::vector<double>{0.0, 0.0, 0.0}) == 1.0);
  CHECK(determination_rate(std::vector<double>{0.05, -0.2, 0.09, 0.5}) == 0.5);
  CHECK(determination_rate(std::vector<double>{0.1, -0.1}) == 1.0);
  CHECK_THROWS_AS(determination_rate(std::vector<double>{}), Error);

  const std::vector<FgError> e{FgError::from_estimate(105, 100), FgError::failure(100),
                               FgError::from_estimate(80, 100), FgError::from_estimate(99, 100)};
  CHECK(determination_rate(e) == 0.5);
  CHECK_FALSE(e[1].rel_error().has_value());
  CHECK(*e[0].rel_error() == doctest::Approx(0.05));
  CHECK_THROWS_AS(determination_rate(std::vector<FgError>{}), Error);
}

TEST_CASE("error histogram") {
  const auto h = error_histogram(std::vector<double>(7, 0.0));
  REQUIRE(h.counts.size() == 50);
  CHECK(h.counts[25] == 7);
  CHECK(h.bin_center(25) == doctest::Approx(0.01));

  const auto over = error_histogram(std::vector<double>{0.9});
  CHECK(over.overflow == 1);
  CHECK(over.total() == 1);

  std::mt19937_64 rng(41);
  std::normal_distribution<double> g(0.0, 0.4);
  std::vector<double> v(1000);
  for (double& x : v) x = g(rng);
  const auto all = error_histogram(v);
  std::size_t sum = all.underflow + all.overflow;
  for (auto c : all.counts) sum += c;
  CHECK(sum == v.size());
  CHECK(all.total() == v.size());

  const std::vector<FgError> e{FgError::from_estimate(100, 100), FgError::failure(100)};
  const auto hf = error_histogram(e);
  CHECK(hf.failures == 1);
  CHECK(hf.total() == 2);

  std::ostringstream csv;
  write_histogram_csv(csv, h);
  const std::string text = csv.str();
  CHECK(text.rfind("bin_center,count\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 51);
}
