#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "glotbench/error.hpp"
#include "glotbench/polynomial.hpp"
#include "glotbench/spectral.hpp"
#include "glotbench/vowel_synthesis.hpp"
#include "test_support.hpp"

using namespace glotbench;
using std::numbers::pi;

namespace {

std::vector<double> impulse_response(std::span<const double> a, std::size_t n) {
  std::vector<double> x(n, 0.0);
  x[0] = 1.0;
  return allpole_filter(x, a);
}

std::vector<double> random_frame(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> x(n);
  for (double& v : x) v = g(rng);
  return x;
}

double response_db(std::span<const double> taps, double hz, int fs) {
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    acc += taps[i] * std::polar(1.0, -2.0 * pi * hz / fs * static_cast<double>(i));
  }
  return 20.0 * std::log10(std::abs(acc));
}

}  // namespace

TEST_CASE("windows peak at one on their centre") {
  const auto b = window(WindowSpec::blackman(), 5);
  CHECK(b[2] == doctest::Approx(1.0));
  CHECK(b[0] == 0.0);
  const auto h = window(WindowSpec::hanning_poisson(2.0), 64);
  CHECK(h[32] == 1.0);
}

TEST_CASE("hanning-poisson endpoints vanish") {
  for (long half : {2L, 7L, 32L, 101L}) {
    CHECK(window_value(WindowSpec::hanning_poisson(2.0), half, half) == 0.0);
    CHECK(window_value(WindowSpec::hanning_poisson(2.0), -half, half) == 0.0);
  }
  CHECK(window(WindowSpec::hanning_poisson(2.0), 64)[0] == 0.0);
}

TEST_CASE("hanning-poisson decreases strictly away from the centre") {
  const auto w = window(WindowSpec::hanning_poisson(2.0), 64);
  for (std::size_t i = 32; i + 1 < 64; ++i) CHECK(w[i + 1] < w[i]);
  for (std::size_t i = 32; i > 0; --i) CHECK(w[i - 1] < w[i]);
  // Closed form at a quarter of the half-width.
  const double x = 0.25;
  CHECK(w[40] == doctest::Approx(0.5 * (1.0 + std::cos(pi * x)) * std::exp(-2.0 * x)));
}

TEST_CASE("centered_window spans the longer side") {
  const auto w = centered_window(WindowSpec::hanning_poisson(2.0), 10, 3);
  CHECK(w[3] == 1.0);
  CHECK(w[9] == 0.0);  // six samples to the right: the far edge
  CHECK(w[0] > 0.0);
  CHECK_THROWS_AS(centered_window(WindowSpec::blackman(), 10, 10), Error);
  CHECK_THROWS_AS(window(WindowSpec::blackman(), 3), Error);
}

TEST_CASE("lpc recovers an AR(1) decay") {
  const std::vector<double> a{1.0, -0.9};
  const auto m = lpc(impulse_response(a, 200), 1);
  CHECK(m.coeffs[0] == 1.0);
  CHECK(m.coeffs[1] == doctest::Approx(-0.9).epsilon(1e-3));
}

TEST_CASE("lpc recovers a resonator frequency") {
  const Formant f{728.0, 80.0};
  const auto a = resonator_polynomial(std::span(&f, 1), 8000);
  const auto m = lpc(impulse_response(a, 600), 2);
  const auto roots = polynomial_roots(m.coeffs);
  const double hz = std::abs(std::arg(roots[0])) * 8000.0 / (2.0 * pi);
  CHECK(std::abs(hz - 728.0) < 1.0);
}

TEST_CASE("lpc of order zero is the identity") {
  std::mt19937_64 rng(3);
  const auto x = random_frame(rng, 50);
  const auto m = lpc(x, 0);
  REQUIRE(m.coeffs.size() == 1);
  CHECK(m.coeffs[0] == 1.0);
  CHECK(inverse_filter(x, m) == x);
  double energy = 0.0;
  for (double v : x) energy += v * v;
  CHECK(m.gain == doctest::Approx(std::sqrt(energy)));
}

TEST_CASE("lpc rejects degenerate frames") {
  CHECK_THROWS_AS(lpc(std::vector<double>(100, 0.0), 10), Error);
  CHECK_THROWS_AS(lpc(std::vector<double>(20, 1.0), 10), Error);
}

TEST_CASE("lpc models are minimum phase on random frames") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = random_frame(rng, 40 + static_cast<std::size_t>(trial) * 3);
    // Integrate to get a strongly coloured spectrum.
    x = integrate(x, 0.999);
    const auto m = lpc(x, 10);
    CHECK(is_minimum_phase(m.coeffs));
    for (const auto& z : polynomial_roots(m.coeffs)) CHECK(std::abs(z) < 1.0);
  }
}

TEST_CASE("stabilize pulls roots inside the unit circle") {
  AllPoleModel m;
  m.coeffs = {1.0, -2.5, 1.0};  // roots 0.5 and 2
  CHECK_FALSE(is_minimum_phase(m.coeffs));
  stabilize(m);
  CHECK(is_minimum_phase(m.coeffs));
}

TEST_CASE("dap recovers an exact all-pole envelope") {
  const std::vector<Formant> fm{{500.0, 100.0}, {1500.0, 150.0}};
  const auto a = resonator_polynomial(fm, 8000);
  const auto x = impulse_response(a, 2000);
  // 20 harmonics below Nyquist.
  const double f0 = 4000.0 / 20.5;
  REQUIRE(harmonic_grid(f0, 8000).size() == 20);
  const auto r = dap(x, 4, f0, 8000);
  REQUIRE(r.model.coeffs.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(r.model.coeffs[i] == doctest::Approx(a[i]).epsilon(1e-4));
}

TEST_CASE("dap does not increase the Itakura-Saito error of lpc") {
  SynthesisCondition c;
  for (char v : kVowels) {
    c.vowel = v;
    const auto s = synthesize(c);
    const std::span<const double> frame(s.samples.data() + s.gcis[2], 160);
    const auto omegas = harmonic_grid(c.lf.f0, 8000);
    const auto power = power_at(frame, omegas);
    const auto base = lpc(frame, 10);
    const auto r = dap(frame, 10, c.lf.f0, 8000);
    CHECK(r.is_error <= itakura_saito_error(power, omegas, base.coeffs) + 1e-12);
    CHECK(r.is_error == doctest::Approx(itakura_saito_error(power, omegas, r.model.coeffs)));
    CHECK(is_minimum_phase(r.model.coeffs));
  }
}

TEST_CASE("dap with no iterations returns lpc") {
  std::mt19937_64 rng(9);
  const auto x = integrate(random_frame(rng, 200), 0.95);
  DapOptions opts;
  opts.max_iter = 0;
  const auto r = dap(x, 8, 120.0, 8000, opts);
  CHECK(r.model.coeffs == lpc(x, 8).coeffs);
  CHECK(r.iterations == 0);
}

TEST_CASE("inverse filtering") {
  std::mt19937_64 rng(5);
  const auto x = random_frame(rng, 300);
  CHECK(inverse_filter(x, AllPoleModel{}) == x);

  const auto a = builtin_vowel('a').ar_coeffs;
  AllPoleModel m;
  m.coeffs = a;
  const auto e = inverse_filter(impulse_response(a, 400), m);
  CHECK(e[0] == doctest::Approx(1.0));
  for (std::size_t i = 1; i < e.size(); ++i) CHECK(std::abs(e[i]) < 1e-12);

  // All-pole filtering undoes the inverse filter.
  const auto back = allpole_filter(inverse_filter(x, m), a);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-9));
}

TEST_CASE("leaky integration") {
  std::vector<double> imp(50, 0.0);
  imp[0] = 1.0;
  const auto y = integrate(imp, 0.99);
  for (std::size_t n = 0; n < y.size(); ++n) CHECK(y[n] == doctest::Approx(std::pow(0.99, n)));
  CHECK(integrate(std::vector<double>(10, 0.0), 0.99) == std::vector<double>(10, 0.0));
  const auto s = integrate(std::vector<double>(5000, 1.0), 0.99);
  CHECK(s.back() == doctest::Approx(100.0).epsilon(1e-9));
  // First difference of a step is an impulse.
  CHECK(differentiate(std::vector<double>(50, 1.0)) == imp);
}

TEST_CASE("highpass taps") {
  const auto taps = highpass_taps(40.0, 8000);
  CHECK(taps.size() == 201);
  CHECK(taps.size() % 2 == 1);
  for (std::size_t i = 0; i < taps.size(); ++i) CHECK(taps[i] == doctest::Approx(taps[taps.size() - 1 - i]));
  CHECK(response_db(taps, 0.0, 8000) < -60.0);
  for (double hz = 100.0; hz <= 4000.0; hz += 10.0) CHECK(std::abs(response_db(taps, hz, 8000)) < 0.1);
  CHECK_THROWS_AS(highpass_taps(0.0, 8000), Error);
  CHECK_THROWS_AS(highpass_taps(4000.0, 8000), Error);
}

TEST_CASE("highpass removes DC and keeps the passband") {
  const auto flat = highpass(std::vector<double>(800, 3.0), 40.0, 8000);
  for (double v : flat) CHECK(std::abs(v) < 1e-3 * 3.0);

  std::vector<double> x(8000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(2.0 * pi * 200.0 * i / 8000.0);
  const auto y = highpass(x, 40.0, 8000);
  const auto z = highpass(y, 40.0, 8000);
  auto rms = [](const std::vector<double>& v) {
    double acc = 0.0;
    for (double s : v) acc += s * s;
    return std::sqrt(acc / static_cast<double>(v.size()));
  };
  CHECK(std::abs(20.0 * std::log10(rms(y) / rms(x))) < 0.1);
  CHECK(std::abs(20.0 * std::log10(rms(z) / rms(y))) < 0.2);
  // Zero phase: the output stays aligned with the input.
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(0.02).scale(1.0));
}

TEST_CASE("magnitude spectrum of an impulse is flat") {
  std::vector<double> x{1.0};
  const auto s = magnitude_spectrum_db(x, 8000);
  CHECK(s.size() == 4001);
  for (double v : s.values_db) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("magnitude spectrum peaks at a sinusoid") {
  std::vector<double> x(8000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(2.0 * pi * 1000.0 * i / 8000.0);
  const auto s = magnitude_spectrum_db(x, 8000);
  CHECK(testing::argmax_in(s.values_db, 0, 4000) == 1000);
}

TEST_CASE("magnitude spectrum matches a direct Fourier sum") {
  std::mt19937_64 rng(23);
  for (std::size_t n : {7u, 160u, 333u, 9000u}) {
    const auto x = random_frame(rng, n);
    const auto s = magnitude_spectrum_db(x, 8000);
    if (n > 1000) continue;  // the dense oracle is quadratic
    const auto ref = testing::dense_spectrum_db(x, 8000);
    for (std::size_t f = 0; f < ref.size(); f += 7) CHECK(s.values_db[f] == doctest::Approx(ref[f]).epsilon(1e-8));
  }
}

TEST_CASE("scaling the frame shifts the spectrum by 20 log10 c") {
  std::mt19937_64 rng(29);
  const auto x = random_frame(rng, 160);
  auto y = x;
  for (double& v : y) v *= 10.0;
  const auto a = magnitude_spectrum_db(x, 8000);
  const auto b = magnitude_spectrum_db(y, 8000);
  for (std::size_t f = 0; f < a.size(); ++f) CHECK(b.values_db[f] - a.values_db[f] == doctest::Approx(20.0).epsilon(1e-9));
}

TEST_CASE("zero bins are floored") {
  CHECK(to_db(0.0) == kDbFloor);
  CHECK_THROWS_AS(magnitude_spectrum_db(std::vector<double>{}, 8000), Error);
}

TEST_CASE("mean-dB normalisation centres the band") {
  std::mt19937_64 rng(31);
  const auto s = normalize_mean_db(magnitude_spectrum_db(random_frame(rng, 100), 8000));
  double mean = 0.0;
  for (std::size_t f = 20; f <= 4000; ++f) mean += s.values_db[f];
  CHECK(std::abs(mean / 3981.0) < 1e-9);
}
