#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "glotbench/polynomial.hpp"
#include "glotbench/signal.hpp"
#include "glotbench/spectral.hpp"

namespace glotbench {

/// Two-period frame around GCI number k: [gci[k-1], gci[k+1]), with the
/// centre GCI at offset gci[k] - gci[k-1]. Throws edge_gci for the first
/// and last GCI.
Frame extract_frame(const SampledSignal& x, std::size_t k);
Frame extract_frame(std::span<const double> samples, std::span<const std::size_t> gcis,
                    std::size_t k, int fs);

/// Zeros of the z-transform split by modulus.
///
/// Roots with |z| > 1 + kUnitCircleBand form the anticausal (maximum
/// phase) part; everything else is causal. Leading zeros of the windowed
/// frame are a pure delay and are removed before root finding, so the
/// root count is n - 1 - leading_trim; trailing zeros contribute causal
/// roots at the origin.
struct ZztDecomposition {
  double gain = 0.0;  // first non-zero windowed sample
  std::vector<Complex> anticausal_roots;
  std::vector<Complex> causal_roots;
  std::size_t n = 0;
  std::size_t leading_trim = 0;
};

inline constexpr double kUnitCircleBand = 1e-8;

/// Windows the frame (window peaked at floor(n/2)), then splits its roots.
ZztDecomposition zzt_decompose(std::span<const double> frame,
                               const WindowSpec& window = WindowSpec::blackman());

/// Same, with the window peak placed on the frame's GCI.
ZztDecomposition zzt_decompose(const Frame& frame,
                               const WindowSpec& window = WindowSpec::blackman());

struct ZztSpectrum {
  MagnitudeSpectrum spectrum;
  bool empty = false;  // no roots on this side; spectrum is flat 0 dB
};

/// 20 log10 |prod (e^{jw} - Z)| over the anticausal roots, 1 Hz grid.
ZztSpectrum anticausal_spectrum(const ZztDecomposition& d, int fs);

/// Same over the causal roots (the gain is not included).
ZztSpectrum causal_spectrum(const ZztDecomposition& d, int fs);

/// CSV rows `re,im,modulus,class` with a header line.
void write_roots_csv(std::ostream& out, const ZztDecomposition& d);

}  // namespace glotbench
