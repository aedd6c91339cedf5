#pragma once

#include <cstddef>

#include "glotbench/signal.hpp"

namespace glotbench {

/// Liljencrants-Fant shape parameters.
///
/// Instants derive from the period T0 = 1/f0: the GCI sits at Te = oq*T0,
/// the flow peak at Tp = am*Te, and the return phase time constant is
/// Ta = qa*(T0 - Te).
struct LfParams {
  double f0 = 100.0;  // Hz
  double ee = 1.0;    // magnitude of the negative peak at Te
  double oq = 0.6;    // open quotient, (0, 1)
  double am = 0.67;   // asymmetry, (0.5, 1)
  double qa = 0.05;   // return quotient, [0, 1)

  void validate() const;
};

/// Minimum period length accepted by the pulse generator.
inline constexpr int kMinSamplesPerPeriod = 16;

/// Samples per period, round(fs/f0).
std::size_t period_samples(double f0, int fs);

/// Sample index of Te inside one period, round(oq * period), kept in
/// [2, period - 1].
std::size_t te_index(const LfParams& params, int fs);

/// One period of the LF flow derivative sampled at t = n/fs. The sampled
/// period sums to zero (no net flow) and equals -ee at the GCI sample.
/// Te is snapped to the sample grid so the GCI is a sample instant; gcis
/// holds that single index.
SampledSignal lf_pulse(const LfParams& params, int fs);

/// n_periods copies of lf_pulse back to back; gcis holds every Te sample.
SampledSignal lf_pulse_train(const LfParams& params, std::size_t n_periods, int fs);

/// Frequency (Hz, integer grid, >= 20) of the global maximum of the
/// pulse's magnitude spectrum.
double reference_glottal_formant(const LfParams& params, int fs);

}  // namespace glotbench
