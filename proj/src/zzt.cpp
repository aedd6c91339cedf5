#include "glotbench/zzt.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "glotbench/error.hpp"

namespace glotbench {

Frame extract_frame(std::span<const double> samples, std::span<const std::size_t> gcis,
                    std::size_t k, int fs) {
  if (k == 0 || k + 1 >= gcis.size()) {
    throw Error(ErrorKind::edge_gci,
                "GCI " + std::to_string(k) + " has no neighbour on both sides");
  }
  const std::size_t begin = gcis[k - 1];
  const std::size_t end = gcis[k + 1];
  if (!(begin < gcis[k] && gcis[k] < end) || end > samples.size()) {
    throw Error(ErrorKind::out_of_range, "GCIs do not delimit a frame inside the signal");
  }
  Frame f;
  f.samples.assign(samples.begin() + static_cast<long>(begin),
                   samples.begin() + static_cast<long>(end));
  f.gci_offset = gcis[k] - begin;
  f.fs = fs;
  return f;
}

Frame extract_frame(const SampledSignal& x, std::size_t k) {
  return extract_frame(x.samples, x.gcis, k, x.fs);
}

namespace {

ZztDecomposition decompose_windowed(std::vector<double> windowed) {
  ZztDecomposition d;
  d.n = windowed.size();
  std::size_t first = 0;
  while (first < windowed.size() && windowed[first] == 0.0) ++first;
  if (first == windowed.size()) {
    throw Error(ErrorKind::zero_polynomial, "zzt: frame is all zeros");
  }
  d.leading_trim = first;
  d.gain = windowed[first];
  const std::span<const double> coeffs(windowed.data() + first, windowed.size() - first);
  if (coeffs.size() < 2) return d;
  for (const Complex& z : polynomial_roots(coeffs)) {
    (std::abs(z) > 1.0 + kUnitCircleBand ? d.anticausal_roots : d.causal_roots).push_back(z);
  }
  return d;
}

ZztSpectrum root_spectrum(std::span<const Complex> roots, int fs) {
  ZztSpectrum out;
  out.spectrum.fs = fs;
  const std::size_t bins = static_cast<std::size_t>(fs / 2) + 1;
  out.spectrum.values_db.assign(bins, 0.0);
  out.empty = roots.empty();
  if (roots.empty()) return out;
  for (std::size_t hz = 0; hz < bins; ++hz) {
    const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(hz) / fs);
    double acc = 0.0;
    for (const Complex& z : roots) acc += std::log10(std::norm(e - z));
    // log10 of a zero factor is -inf; clamp like every other spectrum
    out.spectrum.values_db[hz] = std::max(kDbFloor, 10.0 * acc);
  }
  return out;
}

}  // namespace

ZztDecomposition zzt_decompose(std::span<const double> frame, const WindowSpec& window_spec) {
  if (frame.size() < 2) throw Error(ErrorKind::invalid_parameter, "zzt: frame too short");
  std::vector<double> windowed(frame.begin(), frame.end());
  if (window_spec.kind != WindowKind::none) {
    const auto w = window(window_spec, frame.size());
    for (std::size_t i = 0; i < windowed.size(); ++i) windowed[i] *= w[i];
  }
  return decompose_windowed(std::move(windowed));
}

ZztDecomposition zzt_decompose(const Frame& frame, const WindowSpec& window_spec) {
  if (frame.samples.size() < 2) throw Error(ErrorKind::invalid_parameter, "zzt: frame too short");
  std::vector<double> windowed = frame.samples;
  if (window_spec.kind != WindowKind::none) {
    const auto w = centered_window(window_spec, windowed.size(), frame.gci_offset);
    for (std::size_t i = 0; i < windowed.size(); ++i) windowed[i] *= w[i];
  }
  return decompose_windowed(std::move(windowed));
}

ZztSpectrum anticausal_spectrum(const ZztDecomposition& d, int fs) {
  return root_spectrum(d.anticausal_roots, fs);
}

ZztSpectrum causal_spectrum(const ZztDecomposition& d, int fs) {
  return root_spectrum(d.causal_roots, fs);
}

void write_roots_csv(std::ostream& out, const ZztDecomposition& d) {
  out << "re,im,modulus,class\n";
  char line[128];
  auto emit = [&](const std::vector<Complex>& roots, const char* cls) {
    for (const Complex& z : roots) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%s\n", z.real(), z.imag(),
                    std::abs(z), cls);
      out << line;
    }
  };
  emit(d.anticausal_roots, "anticausal");
  emit(d.causal_roots, "causal");
}

}  // namespace glotbench
