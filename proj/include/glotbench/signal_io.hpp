#pragma once

#include <filesystem>
#include <ostream>
#include <span>

#include "glotbench/signal.hpp"
#include "glotbench/spectral.hpp"

namespace glotbench {

/// Mono 16-bit PCM WAV, peak-normalised to 0.9 full scale. Throws Error(io).
void write_wav(const std::filesystem::path& path, std::span<const double> samples, int fs);

/// index,time_s,value[,is_gci] one sample per line.
void write_signal_csv(std::ostream& out, const SampledSignal& signal);

/// freq_hz,magnitude_db on the 1 Hz grid.
void write_spectrum_csv(std::ostream& out, const MagnitudeSpectrum& spec);

}  // namespace glotbench
