#include "glotbench/iaif.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "glotbench/error.hpp"
#include "glotbench/spectral.hpp"
#include "glotbench/zzt.hpp"

namespace glotbench {

void IaifConfig::validate() const {
  if (glottal_order_pass2 < 1 || glottal_order_pass2 > 6) {
    throw Error(ErrorKind::invalid_parameter, "IAIF glottal order must lie in [1, 6]");
  }
  if (vt_order < 4 || vt_order > 30) {
    throw Error(ErrorKind::invalid_parameter, "IAIF vocal-tract order must lie in [4, 30]");
  }
  if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorKind::invalid_parameter, "IAIF rho must lie in (0, 1)");
}

namespace {

class AllPoleFitter {
 public:
  AllPoleFitter(std::size_t n, int fs, const IaifConfig& cfg, std::optional<double> f0)
      : hann_(n), fs_(fs), use_dap_(cfg.use_dap), f0_(f0.value_or(0.0)) {
    for (std::size_t i = 0; i < n; ++i) {
      hann_[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n));
    }
  }

  AllPoleModel operator()(std::span<const double> x, std::size_t order) const {
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = x[i] * hann_[i];
    if (use_dap_) return dap(w, order, f0_, fs_).model;
    return lpc(w, order);
  }

 private:
  std::vector<double> hann_;
  int fs_;
  bool use_dap_;
  double f0_;
};

}  // namespace

std::vector<double> iaif(std::span<const double> speech, int fs, const IaifConfig& cfg,
                         std::optional<double> f0_hint) {
  cfg.validate();
  if (speech.size() < 4 * cfg.vt_order) {
    throw Error(ErrorKind::degenerate_frame, "IAIF frame shorter than 4 * vt_order");
  }
  if (cfg.use_dap && !(f0_hint && *f0_hint > 0.0)) {
    throw Error(ErrorKind::invalid_parameter, "IAIF with DAP needs an f0 hint");
  }
  if (std::all_of(speech.begin(), speech.end(), [](double v) { return v == 0.0; })) {
    throw Error(ErrorKind::degenerate_frame, "IAIF frame is silent");
  }
  const AllPoleFitter fit(speech.size(), fs, cfg, f0_hint);

  const auto hp = highpass(speech, cfg.hp_cutoff_hz, fs);                    // 1
  const auto glottal1 = fit(hp, 1);                                           // 2
  const auto tilt_removed = inverse_filter(hp, glottal1);                     // 3
  const auto tract1 = fit(tilt_removed, cfg.vt_order);                        // 4
  const auto source1 = integrate(inverse_filter(hp, tract1), cfg.rho);        // 5, 6
  const auto glottal2 = fit(source1, cfg.glottal_order_pass2);                // 7
  const auto tract_only = integrate(inverse_filter(hp, glottal2), cfg.rho);   // 8, 9
  const auto tract2 = fit(tract_only, cfg.vt_order);                          // 10
  const auto flow = integrate(inverse_filter(hp, tract2), cfg.rho);           // 11, 12
  // Back to the derivative domain with the difference matched to the leak,
  // so the last integration is undone exactly.
  std::vector<double> derivative(flow.size());
  for (std::size_t i = 0; i < flow.size(); ++i) {
    derivative[i] = flow[i] - (i > 0 ? cfg.rho * flow[i - 1] : 0.0);
  }
  return derivative;
}

std::map<std::size_t, Frame> iaif_full_signal(const SampledSignal& speech,
                                              const IaifConfig& cfg,
                                              std::optional<double> f0_hint) {
  speech.validate();
  if (speech.gcis.size() < 5) {
    throw Error(ErrorKind::too_few_gcis, "IAIF over a signal needs at least 5 GCIs");
  }
  std::map<std::size_t, Frame> out;
  for (std::size_t k = 1; k + 1 < speech.gcis.size(); ++k) {
    Frame frame = extract_frame(speech, k);
    frame.samples = iaif(frame.samples, speech.fs, cfg, f0_hint);
    out.emplace(k, std::move(frame));
  }
  return out;
}

}  // namespace glotbench
