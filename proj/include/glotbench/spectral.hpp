#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace glotbench {

// ---------------------------------------------------------------------------
// Windows
// ---------------------------------------------------------------------------

enum class WindowKind { none, blackman, hanning_poisson };

struct WindowSpec {
  WindowKind kind = WindowKind::hanning_poisson;
  double alpha = 2.0;  // Hanning-Poisson decay; ignored by other kinds

  static WindowSpec blackman() { return {WindowKind::blackman, 0.0}; }
  static WindowSpec hanning_poisson(double alpha = 2.0) {
    return {WindowKind::hanning_poisson, alpha};
  }
  static WindowSpec rectangular() { return {WindowKind::none, 0.0}; }
};

/// Value of the window at signed offset `k` from its peak, for half-width
/// `half_width` (so k in [-half_width, half_width]). Peak value is 1.
double window_value(const WindowSpec& spec, long k, long half_width);

/// Symmetric window of length n (n >= 4) whose peak sits at sample n/2
/// (floor). Samples are w(i - n/2) with half-width n/2, so for even n the
/// first sample is the zero endpoint and the last one is not.
std::vector<double> window(const WindowSpec& spec, std::size_t n);

/// Window of length n peaked at `center`, wide enough to span the whole
/// range: half-width is max(center, n - 1 - center).
std::vector<double> centered_window(const WindowSpec& spec, std::size_t n,
                                    std::size_t center);

// ---------------------------------------------------------------------------
// All-pole modelling
// ---------------------------------------------------------------------------

/// A(z) = 1 + a1 z^-1 + ... + ap z^-p with an excitation gain.
struct AllPoleModel {
  std::vector<double> coeffs{1.0};
  double gain = 1.0;

  std::size_t order() const noexcept { return coeffs.size() - 1; }
};

/// Autocorrelation-method linear prediction solved by Levinson-Durbin.
/// gain = sqrt(prediction error energy). Throws degenerate_frame for an
/// all-zero frame or when the frame is not longer than 2 * order.
AllPoleModel lpc(std::span<const double> frame, std::size_t order);

/// Reflection coefficients of A(z) by the step-down recursion. Any
/// |k| >= 1 means A(z) has a root on or outside the unit circle.
std::vector<double> reflection_coefficients(std::span<const double> a);

bool is_minimum_phase(std::span<const double> a);

/// Scales a_k by gamma^k until A(z) is minimum phase.
void stabilize(AllPoleModel& model, double gamma = 0.995);

struct DapOptions {
  int max_iter = 30;
  double tol = 1e-8;
};

struct DapResult {
  AllPoleModel model;
  int iterations = 0;
  bool converged = false;
  double is_error = 0.0;  // gain-optimised Itakura-Saito error of `model`
};

/// Harmonic frequencies m * f0 strictly below fs/2, in radians per sample.
std::vector<double> harmonic_grid(double f0, int fs);

/// |X(w)|^2 of `frame` at each angular frequency in `omegas`.
std::vector<double> power_at(std::span<const double> frame,
                             std::span<const double> omegas);

/// Discrete Itakura-Saito error between the power samples and the
/// all-pole envelope g^2/|A|^2, with g chosen optimally for the shape A.
double itakura_saito_error(std::span<const double> power,
                           std::span<const double> omegas,
                           std::span<const double> a);

/// Discrete all-pole modelling (El-Jaroudi & Makhoul): minimises the
/// Itakura-Saito error on the harmonics of f0, starting from lpc(frame).
/// Non-convergence is reported through `converged`, never thrown; the best
/// iterate seen is returned. max_iter = 0 returns the LPC model untouched.
DapResult dap(std::span<const double> frame, std::size_t order, double f0,
              int fs, const DapOptions& options = {});

// ---------------------------------------------------------------------------
// Filtering
// ---------------------------------------------------------------------------

/// FIR filtering by A(z) with zero initial history.
std::vector<double> inverse_filter(std::span<const double> x,
                                   const AllPoleModel& model);
std::vector<double> fir_filter(std::span<const double> x,
                               std::span<const double> b);

/// Recursive filtering by 1/A(z), a[0] must be 1.
std::vector<double> allpole_filter(std::span<const double> x,
                                   std::span<const double> a);

/// Leaky integrator y(n) = x(n) + rho y(n-1).
std::vector<double> integrate(std::span<const double> x, double rho);

/// First difference y(n) = x(n) - x(n-1), x(-1) = 0.
std::vector<double> differentiate(std::span<const double> x);

/// Taps of the linear-phase high-pass: Kaiser-windowed sinc low-pass
/// normalised to unit DC gain, subtracted from a centred impulse. Length
/// is 1 + fs/cutoff rounded to the nearest odd integer.
std::vector<double> highpass_taps(double cutoff_hz, int fs);

/// Zero-phase FIR high-pass with periodic edge extension: the input is
/// treated as one cycle, which is exact for whole-period analysis frames.
std::vector<double> highpass(std::span<const double> x, double cutoff_hz,
                             int fs);

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

inline constexpr double kDbFloor = -300.0;

/// Magnitude in dB on the integer-Hz grid 0..fs/2.
struct MagnitudeSpectrum {
  std::vector<double> values_db;
  int fs = 8000;

  std::size_t size() const noexcept { return values_db.size(); }
  double at_hz(std::size_t hz) const { return values_db.at(hz); }
};

double to_db(double magnitude) noexcept;

/// Zero-pads the frame to a multiple of fs samples (at least fs) and
/// samples the DFT magnitude at every integer Hz.
MagnitudeSpectrum magnitude_spectrum_db(std::span<const double> frame, int fs);

/// Subtracts the mean dB over [lo_hz, hi_hz] from every bin.
MagnitudeSpectrum normalize_mean_db(MagnitudeSpectrum spectrum,
                                    std::size_t lo_hz = 20,
                                    std::size_t hi_hz = 4000);

}  // namespace glotbench
