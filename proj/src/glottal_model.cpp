#include "glotbench/glottal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "glotbench/error.hpp"
#include "glotbench/spectral.hpp"

namespace glotbench {

void SampledSignal::validate() const {
  if (fs <= 0) throw Error(ErrorKind::invalid_parameter, "sample rate must be positive");
  for (std::size_t i = 0; i < gcis.size(); ++i) {
    if (gcis[i] >= samples.size()) {
      throw Error(ErrorKind::invalid_parameter, "GCI index beyond signal end");
    }
    if (i > 0 && gcis[i] <= gcis[i - 1]) {
      throw Error(ErrorKind::invalid_parameter, "GCI indices must be strictly increasing");
    }
  }
}

void LfParams::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorKind::invalid_parameter, "LF parameters: " + what);
  };
  if (!(f0 > 0.0) || !std::isfinite(f0)) fail("f0 must be positive");
  if (!(ee > 0.0) || !std::isfinite(ee)) fail("ee must be positive");
  if (!(oq > 0.0 && oq < 1.0)) fail("oq must lie in (0, 1)");
  if (!(am > 0.5 && am < 1.0)) fail("am must lie in (0.5, 1)");
  if (!(qa >= 0.0 && qa < 1.0)) fail("qa must lie in [0, 1)");
}

std::size_t period_samples(double f0, int fs) {
  return static_cast<std::size_t>(std::lround(fs / f0));
}

std::size_t te_index(const LfParams& params, int fs) {
  const auto n = static_cast<long>(period_samples(params.f0, fs));
  const long te = std::lround(params.oq * static_cast<double>(n));
  return static_cast<std::size_t>(std::clamp(te, 2L, n - 1));
}

namespace {

// Solves eps*Ta = 1 - exp(-eps*(Tc - Te)) by Newton iteration.
double solve_return_constant(double ta, double closed) {
  double eps = 1.0 / ta;
  for (int it = 0; it < 50; ++it) {
    const double e = std::exp(-eps * closed);
    const double f = eps * ta - 1.0 + e;
    const double df = ta - closed * e;
    const double next = eps - f / df;
    const bool done = std::abs(next - eps) <= 1e-10 * std::abs(eps);
    eps = next > 0.0 ? next : 0.5 * eps;
    if (done) break;
  }
  return eps;
}

}  // namespace

SampledSignal lf_pulse(const LfParams& params, int fs) {
  params.validate();
  if (fs <= 0) throw Error(ErrorKind::invalid_parameter, "sample rate must be positive");
  if (fs / params.f0 < kMinSamplesPerPeriod) {
    throw Error(ErrorKind::too_few_samples,
                "LF pulse needs at least 16 samples per period");
  }
  const std::size_t n = period_samples(params.f0, fs);
  const std::size_t te_i = te_index(params, fs);
  const double dt = 1.0 / fs;
  const double tc = static_cast<double>(n) * dt;
  const double te = static_cast<double>(te_i) * dt;
  const double tp = params.am * te;
  const double wg = std::numbers::pi / tp;
  const double ta = params.qa * (tc - te);

  std::vector<double> out(n, 0.0);

  // Return phase: fixed once Ta is known.
  double return_sum = 0.0;
  if (ta > 0.0) {
    const double eps = solve_return_constant(ta, tc - te);
    const double tail = std::exp(-eps * (tc - te));
    for (std::size_t i = te_i + 1; i < n; ++i) {
      const double t = static_cast<double>(i) * dt;
      out[i] = -params.ee / (eps * ta) * (std::exp(-eps * (t - te)) - tail);
      return_sum += out[i];
    }
  }

  // Open phase: -ee * exp(alpha (t - Te)) sin(wg t) / sin(wg Te); alpha is
  // chosen so that the sampled period sums to zero.
  const double sin_te = std::sin(wg * te);
  auto open_sample = [&](std::size_t i, double alpha) {
    const double t = static_cast<double>(i) * dt;
    return -params.ee * std::exp(alpha * (t - te)) * std::sin(wg * t) / sin_te;
  };
  auto net = [&](double x) {
    const double alpha = x / te;
    double s = return_sum;
    for (std::size_t i = 0; i <= te_i; ++i) s += open_sample(i, alpha);
    return s;
  };

  double lo = 0.0, hi = 0.0;
  const double s0 = net(0.0);
  if (s0 > 0.0) {
    hi = 1.0;
    while (net(hi) > 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e4) throw Error(ErrorKind::invalid_parameter, "LF: no open-phase solution");
    }
  } else {
    lo = -1.0;
    while (net(lo) <= 0.0) {
      hi = lo;
      lo *= 2.0;
      if (lo < -1e4) throw Error(ErrorKind::invalid_parameter, "LF: no open-phase solution");
    }
  }
  // net(lo) > 0 >= net(hi)
  for (int it = 0; it < 200 && (hi - lo) > 1e-10 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (net(mid) > 0.0 ? lo : hi) = mid;
  }
  const double alpha = 0.5 * (lo + hi) / te;
  for (std::size_t i = 0; i <= te_i; ++i) out[i] = open_sample(i, alpha);
  out[te_i] = -params.ee;

  SampledSignal sig;
  sig.samples = std::move(out);
  sig.fs = fs;
  sig.gcis = {te_i};
  return sig;
}

SampledSignal lf_pulse_train(const LfParams& params, std::size_t n_periods, int fs) {
  if (n_periods < 3) {
    throw Error(ErrorKind::invalid_parameter, "pulse train needs at least 3 periods");
  }
  const SampledSignal pulse = lf_pulse(params, fs);
  const std::size_t n = pulse.size();
  const std::size_t te_i = te_index(params, fs);
  SampledSignal train;
  train.fs = fs;
  train.samples.reserve(n * n_periods);
  for (std::size_t p = 0; p < n_periods; ++p) {
    train.samples.insert(train.samples.end(), pulse.samples.begin(), pulse.samples.end());
    train.gcis.push_back(p * n + te_i);
  }
  return train;
}

double reference_glottal_formant(const LfParams& params, int fs) {
  const SampledSignal pulse = lf_pulse(params, fs);
  const MagnitudeSpectrum spec = magnitude_spectrum_db(pulse.samples, fs);
  const auto begin = spec.values_db.begin() + 20;
  const auto it = std::max_element(begin, spec.values_db.end());
  return static_cast<double>(std::distance(spec.values_db.begin(), it));
}

}  // namespace glotbench
