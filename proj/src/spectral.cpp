#include "glotbench/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "glotbench/error.hpp"

namespace glotbench {

using std::numbers::pi;

double window_value(const WindowSpec& spec, long k, long half_width) {
  if (half_width <= 0) return 1.0;
  const double x = static_cast<double>(k) / static_cast<double>(half_width);
  double w = 1.0;
  switch (spec.kind) {
    case WindowKind::none:
      w = 1.0;
      break;
    case WindowKind::blackman:
      w = 0.42 + 0.5 * std::cos(pi * x) + 0.08 * std::cos(2.0 * pi * x);
      break;
    case WindowKind::hanning_poisson:
      w = 0.5 * (1.0 + std::cos(pi * x)) * std::exp(-spec.alpha * std::abs(x));
      break;
  }
  // 0.42 - 0.5 + 0.08 leaves a signed 1e-17 residue at the Blackman endpoints
  if (std::abs(w) < 1e-14) w = 0.0;
  return w;
}

std::vector<double> centered_window(const WindowSpec& spec, std::size_t n,
                                    std::size_t center) {
  if (center >= n) {
    throw Error(ErrorKind::invalid_parameter, "window centre outside frame");
  }
  const long c = static_cast<long>(center);
  const long half = std::max(c, static_cast<long>(n) - 1 - c);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = window_value(spec, static_cast<long>(i) - c, half);
  }
  return w;
}

std::vector<double> window(const WindowSpec& spec, std::size_t n) {
  if (n < 4) throw Error(ErrorKind::invalid_parameter, "window length must be >= 4");
  const long half = static_cast<long>(n / 2);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = window_value(spec, static_cast<long>(i) - half, half);
  }
  return w;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> autocorrelation(std::span<const double> x, std::size_t lags) {
  std::vector<double> r(lags + 1, 0.0);
  for (std::size_t lag = 0; lag <= lags && lag < x.size(); ++lag) {
    double acc = 0.0;
    for (std::size_t n = lag; n < x.size(); ++n) acc += x[n] * x[n - lag];
    r[lag] = acc;
  }
  return r;
}

// Levinson-Durbin on r[0..order]; returns A(z) and the final error energy.
std::pair<std::vector<double>, double> levinson(std::span<const double> r,
                                                std::size_t order) {
  std::vector<double> a(order + 1, 0.0);
  a[0] = 1.0;
  double err = r[0];
  std::vector<double> prev(order + 1);
  for (std::size_t i = 1; i <= order; ++i) {
    if (err <= r[0] * 1e-15) break;
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc += a[j] * r[i - j];
    const double k = -acc / err;
    prev = a;
    for (std::size_t j = 1; j < i; ++j) a[j] = prev[j] + k * prev[i - j];
    a[i] = k;
    err *= (1.0 - k * k);
  }
  return {a, std::max(err, 0.0)};
}

}  // namespace

AllPoleModel lpc(std::span<const double> frame, std::size_t order) {
  if (order > 0 && frame.size() <= 2 * order) {
    throw Error(ErrorKind::degenerate_frame,
                "lpc: frame of " + std::to_string(frame.size()) +
                    " samples is too short for order " + std::to_string(order));
  }
  if (frame.empty()) throw Error(ErrorKind::degenerate_frame, "lpc: empty frame");
  const auto r = autocorrelation(frame, order);
  if (!(r[0] > 0.0) || !std::isfinite(r[0])) {
    throw Error(ErrorKind::degenerate_frame, "lpc: frame has no energy");
  }
  auto [a, err] = levinson(r, order);
  AllPoleModel model{std::move(a), std::sqrt(err)};
  stabilize(model);
  return model;
}

std::vector<double> reflection_coefficients(std::span<const double> a) {
  std::vector<double> cur(a.begin(), a.end());
  const std::size_t p = cur.empty() ? 0 : cur.size() - 1;
  std::vector<double> k(p, 0.0);
  for (std::size_t m = p; m >= 1; --m) {
    const double km = cur[m];
    k[m - 1] = km;
    const double denom = 1.0 - km * km;
    if (std::abs(denom) < 1e-300) break;
    std::vector<double> next(m);
    next[0] = 1.0;
    for (std::size_t i = 1; i < m; ++i) next[i] = (cur[i] - km * cur[m - i]) / denom;
    cur = std::move(next);
  }
  return k;
}

bool is_minimum_phase(std::span<const double> a) {
  for (double k : reflection_coefficients(a)) {
    if (!(std::abs(k) < 1.0)) return false;
  }
  return true;
}

void stabilize(AllPoleModel& model, double gamma) {
  for (int guard = 0; guard < 2000 && !is_minimum_phase(model.coeffs); ++guard) {
    double g = gamma;
    for (std::size_t k = 1; k < model.coeffs.size(); ++k, g *= gamma) {
      model.coeffs[k] *= g;
    }
  }
}

// ---------------------------------------------------------------------------
// Discrete all-pole modelling

std::vector<double> harmonic_grid(double f0, int fs) {
  if (!(f0 > 0.0)) throw Error(ErrorKind::invalid_parameter, "harmonic_grid: f0 must be positive");
  std::vector<double> omegas;
  const double nyquist = fs / 2.0;
  for (int m = 1; m * f0 < nyquist - 1e-9; ++m) {
    omegas.push_back(2.0 * pi * m * f0 / fs);
  }
  return omegas;
}

std::vector<double> power_at(std::span<const double> frame,
                             std::span<const double> omegas) {
  std::vector<double> p(omegas.size());
  for (std::size_t m = 0; m < omegas.size(); ++m) {
    std::complex<double> acc = 0.0;
    for (std::size_t n = 0; n < frame.size(); ++n) {
      acc += frame[n] * std::polar(1.0, -omegas[m] * static_cast<double>(n));
    }
    p[m] = std::norm(acc);
  }
  return p;
}

namespace {

std::complex<double> eval_a(std::span<const double> a, double omega) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    acc += a[k] * std::polar(1.0, -omega * static_cast<double>(k));
  }
  return acc;
}

}  // namespace

double itakura_saito_error(std::span<const double> power,
                           std::span<const double> omegas,
                           std::span<const double> a) {
  const std::size_t m = omegas.size();
  if (m == 0 || power.size() != m) {
    throw Error(ErrorKind::invalid_parameter, "itakura_saito_error: bad frequency set");
  }
  // ratio_m = P_m |A_m|^2 / g^2; with optimal g^2 = mean(P |A|^2) the
  // linear term averages to 1 and the error is log(mean) - mean(log).
  std::vector<double> q(m);
  for (std::size_t i = 0; i < m; ++i) q[i] = power[i] * std::norm(eval_a(a, omegas[i]));
  const double mean_q = std::accumulate(q.begin(), q.end(), 0.0) / static_cast<double>(m);
  double mean_log = 0.0;
  for (double v : q) mean_log += std::log(std::max(v, 1e-300));
  mean_log /= static_cast<double>(m);
  return std::log(std::max(mean_q, 1e-300)) - mean_log;
}

DapResult dap(std::span<const double> frame, std::size_t order, double f0,
              int fs, const DapOptions& options) {
  DapResult result;
  result.model = lpc(frame, order);
  const auto omegas = harmonic_grid(f0, fs);
  const auto power = power_at(frame, omegas);
  const std::size_t m = omegas.size();

  auto optimal_gain = [&](std::span<const double> a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += power[i] * std::norm(eval_a(a, omegas[i]));
    return std::sqrt(acc / static_cast<double>(m));
  };

  result.is_error = itakura_saito_error(power, omegas, result.model.coeffs);
  if (options.max_iter <= 0 || order == 0) {
    result.converged = true;
    return result;
  }

  // Autocorrelation of the discrete power samples: R(i) = mean P_m cos(i w_m).
  std::vector<double> r(order + 1, 0.0);
  for (std::size_t i = 0; i <= order; ++i) {
    for (std::size_t k = 0; k < m; ++k) r[i] += power[k] * std::cos(i * omegas[k]);
    r[i] /= static_cast<double>(m);
  }
  Eigen::MatrixXd toeplitz(order, order);
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t k = 0; k < order; ++k) {
      toeplitz(i, k) = r[i > k ? i - k : k - i];
    }
  }
  const auto solver = toeplitz.ldlt();

  std::vector<double> a = result.model.coeffs;
  double err = result.is_error;
  double step = 1.0;
  for (int it = 1; it <= options.max_iter; ++it) {
    result.iterations = it;
    // Stationarity of the IS error in a_1..a_p:
    //   sum_k a_k R(i-k) = g^2 h_i,  h_i = mean Re(e^{j i w} / conj(A(w)))
    const double g2 = std::pow(optimal_gain(a), 2);
    Eigen::VectorXd rhs(order);
    for (std::size_t i = 1; i <= order; ++i) {
      double h = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const auto ak = eval_a(a, omegas[k]);
        h += (std::polar(1.0, static_cast<double>(i) * omegas[k]) / std::conj(ak)).real();
      }
      h /= static_cast<double>(m);
      rhs(static_cast<Eigen::Index>(i - 1)) = g2 * h - r[i];
    }
    const Eigen::VectorXd target = solver.solve(rhs);

    bool accepted = false;
    for (int halvings = 0; halvings < 20 && !accepted; ++halvings) {
      std::vector<double> trial = a;
      for (std::size_t i = 1; i <= order; ++i) {
        trial[i] = (1.0 - step) * a[i] + step * target(static_cast<Eigen::Index>(i - 1));
      }
      if (is_minimum_phase(trial)) {
        const double trial_err = itakura_saito_error(power, omegas, trial);
        if (trial_err <= err) {
          const double change = (err - trial_err) / std::max(err, 1e-300);
          a = std::move(trial);
          err = trial_err;
          accepted = true;
          step = std::min(1.0, step * 2.0);
          if (change < options.tol) result.converged = true;
        }
      }
      if (!accepted) step *= 0.5;
    }
    if (!accepted || result.converged) {
      result.converged = true;
      break;
    }
  }
  result.model.coeffs = a;
  result.model.gain = optimal_gain(a);
  result.is_error = err;
  return result;
}

// ---------------------------------------------------------------------------
// Filtering

std::vector<double> fir_filter(std::span<const double> x, std::span<const double> b) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = 0.0;
    const std::size_t kmax = std::min(b.size() - 1, n);
    for (std::size_t k = 0; k <= kmax; ++k) acc += b[k] * x[n - k];
    y[n] = acc;
  }
  return y;
}

std::vector<double> inverse_filter(std::span<const double> x, const AllPoleModel& model) {
  return fir_filter(x, model.coeffs);
}

std::vector<double> allpole_filter(std::span<const double> x, std::span<const double> a) {
  if (a.empty() || a[0] != 1.0) {
    throw Error(ErrorKind::invalid_parameter, "allpole_filter: a[0] must be 1");
  }
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = x[n];
    const std::size_t kmax = std::min(a.size() - 1, n);
    for (std::size_t k = 1; k <= kmax; ++k) acc -= a[k] * y[n - k];
    y[n] = acc;
  }
  return y;
}

std::vector<double> integrate(std::span<const double> x, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw Error(ErrorKind::invalid_parameter, "integrate: rho must lie in (0, 1)");
  }
  std::vector<double> y(x.size());
  double prev = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    prev = x[n] + rho * prev;
    y[n] = prev;
  }
  return y;
}

std::vector<double> differentiate(std::span<const double> x) {
  std::vector<double> y(x.size());
  double prev = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    y[n] = x[n] - prev;
    prev = x[n];
  }
  return y;
}

std::vector<double> highpass_taps(double cutoff_hz, int fs) {
  if (!(cutoff_hz > 0.0 && cutoff_hz < fs / 2.0)) {
    throw Error(ErrorKind::invalid_parameter, "highpass: cutoff must lie in (0, fs/2)");
  }
  const double span = static_cast<double>(fs) / cutoff_hz;
  const long half = std::max(1L, std::lround(span / 2.0));
  const std::size_t len = static_cast<std::size_t>(2 * half + 1);
  const double fc = cutoff_hz / fs;
  // Kaiser beta for about 40 dB of ripple rejection (0.1 dB passband ripple).
  constexpr double kKaiserBeta = 3.4;
  const double i0_beta = std::cyl_bessel_i(0.0, kKaiserBeta);
  std::vector<double> lp(len);
  for (long i = -half; i <= half; ++i) {
    const double sinc = i == 0 ? 2.0 * fc : std::sin(2.0 * pi * fc * i) / (pi * i);
    const double r = static_cast<double>(i) / static_cast<double>(half);
    const double w = std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) / i0_beta;
    lp[static_cast<std::size_t>(i + half)] = sinc * w;
  }
  const double dc = std::accumulate(lp.begin(), lp.end(), 0.0);
  std::vector<double> hp(len);
  for (std::size_t i = 0; i < len; ++i) hp[i] = -lp[i] / dc;
  hp[static_cast<std::size_t>(half)] += 1.0;
  return hp;
}

std::vector<double> highpass(std::span<const double> x, double cutoff_hz, int fs) {
  const auto taps = highpass_taps(cutoff_hz, fs);
  const long n = static_cast<long>(x.size());
  if (n == 0) return {};
  const long half = static_cast<long>(taps.size() / 2);
  auto wrap = [n](long i) {
    i %= n;
    return i < 0 ? i + n : i;
  };
  std::vector<double> y(x.size());
  for (long t = 0; t < n; ++t) {
    double acc = 0.0;
    for (long k = -half; k <= half; ++k) {
      acc += taps[static_cast<std::size_t>(k + half)] * x[static_cast<std::size_t>(wrap(t - k))];
    }
    y[static_cast<std::size_t>(t)] = acc;
  }
  return y;
}

// ---------------------------------------------------------------------------
// Spectra

double to_db(double magnitude) noexcept {
  if (!(magnitude > 0.0)) return kDbFloor;
  return std::max(kDbFloor, 20.0 * std::log10(magnitude));
}

MagnitudeSpectrum magnitude_spectrum_db(std::span<const double> frame, int fs) {
  if (fs <= 0) throw Error(ErrorKind::invalid_parameter, "spectrum: fs must be positive");
  if (frame.empty()) throw Error(ErrorKind::empty_input, "spectrum: empty frame");
  const std::size_t periods = std::max<std::size_t>(1, (frame.size() + fs - 1) / fs);
  const std::size_t nfft = periods * static_cast<std::size_t>(fs);

  thread_local Eigen::FFT<double> fft;
  std::vector<double> padded(nfft, 0.0);
  std::copy(frame.begin(), frame.end(), padded.begin());
  std::vector<std::complex<double>> bins;
  fft.fwd(bins, padded);

  MagnitudeSpectrum out;
  out.fs = fs;
  out.values_db.resize(static_cast<std::size_t>(fs / 2) + 1);
  for (std::size_t hz = 0; hz < out.values_db.size(); ++hz) {
    out.values_db[hz] = to_db(std::abs(bins[hz * periods]));
  }
  return out;
}

MagnitudeSpectrum normalize_mean_db(MagnitudeSpectrum spectrum, std::size_t lo_hz,
                                    std::size_t hi_hz) {
  hi_hz = std::min(hi_hz, spectrum.size() - 1);
  if (lo_hz > hi_hz) throw Error(ErrorKind::invalid_parameter, "normalize: empty band");
  double mean = 0.0;
  for (std::size_t f = lo_hz; f <= hi_hz; ++f) mean += spectrum.values_db[f];
  mean /= static_cast<double>(hi_hz - lo_hz + 1);
  for (double& v : spectrum.values_db) v -= mean;
  return spectrum;
}

}  // namespace glotbench
