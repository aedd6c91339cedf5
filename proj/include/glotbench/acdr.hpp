#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "glotbench/iaif.hpp"
#include "glotbench/signal.hpp"
#include "glotbench/spectral.hpp"

namespace glotbench {

enum class AcdrRegion {
  pre_gci,     // windowed samples [0, gci_offset]
  full_frame,  // the whole windowed frame
};

struct AcdrOptions {
  WindowSpec window = WindowSpec::hanning_poisson(2.0);
  AcdrRegion region = AcdrRegion::pre_gci;
};

/// Anticausality dominated region of a GCI-centred frame: a sharp window
/// peaked on the GCI and spanning the frame is applied, and the samples up
/// to and including the GCI are kept. Throws out_of_range if gci_offset is
/// not inside the frame.
std::vector<double> acdr_estimate(std::span<const double> frame, std::size_t gci_offset,
                                  const AcdrOptions& options = {});

std::vector<double> acdr_on_speech(const SampledSignal& speech, std::size_t k,
                                   const AcdrOptions& options = {});

/// ACDR applied to the IAIF estimate of the same two-period frame.
std::vector<double> acdr_on_iaif(const SampledSignal& speech, std::size_t k,
                                 const IaifConfig& cfg, const AcdrOptions& options = {},
                                 std::optional<double> f0_hint = std::nullopt);

}  // namespace glotbench
