#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "glotbench/signal.hpp"

namespace glotbench {

struct IaifConfig {
  std::size_t vt_order = 10;
  std::size_t glottal_order_pass2 = 4;
  double rho = 0.99;
  double hp_cutoff_hz = 40.0;
  bool use_dap = false;

  void validate() const;
};

/// Iterative adaptive inverse filtering of one speech frame.
///
///   1  high-pass                      7  glottal fit (order g) on 6
///   2  order-1 fit                    8  inverse filter 1 by 7
///   3  inverse filter 1 by 2          9  integrate
///   4  vocal-tract fit on 3          10  vocal-tract fit on 9
///   5  inverse filter 1 by 4         11  inverse filter 1 by 10
///   6  integrate                     12  integrate
///
/// All fits run on a Hann-weighted copy of their input. The integrated
/// flow of block 12 is differenced back to the flow-derivative domain
/// before it is returned. f0_hint is only read when cfg.use_dap.
std::vector<double> iaif(std::span<const double> speech, int fs, const IaifConfig& cfg,
                         std::optional<double> f0_hint = std::nullopt);

/// IAIF on each interior two-period GCI frame (framing of extract_frame).
/// Keys are GCI indices. Throws too_few_gcis below 5 GCIs.
std::map<std::size_t, Frame> iaif_full_signal(const SampledSignal& speech,
                                              const IaifConfig& cfg,
                                              std::optional<double> f0_hint = std::nullopt);

}  // namespace glotbench
