#include "glotbench/acdr.hpp"

#include "glotbench/error.hpp"
#include "glotbench/zzt.hpp"

namespace glotbench {

std::vector<double> acdr_estimate(std::span<const double> frame, std::size_t gci_offset,
                                  const AcdrOptions& options) {
  if (gci_offset >= frame.size()) {
    throw Error(ErrorKind::out_of_range, "ACDR: GCI offset outside the frame");
  }
  const auto w = centered_window(options.window, frame.size(), gci_offset);
  const std::size_t len =
      options.region == AcdrRegion::pre_gci ? gci_offset + 1 : frame.size();
  std::vector<double> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = frame[i] * w[i];
  return out;
}

std::vector<double> acdr_on_speech(const SampledSignal& speech, std::size_t k,
                                   const AcdrOptions& options) {
  const Frame f = extract_frame(speech, k);
  return acdr_estimate(f.samples, f.gci_offset, options);
}

std::vector<double> acdr_on_iaif(const SampledSignal& speech, std::size_t k,
                                 const IaifConfig& cfg, const AcdrOptions& options,
                                 std::optional<double> f0_hint) {
  const Frame f = extract_frame(speech, k);
  const auto source = iaif(f.samples, speech.fs, cfg, f0_hint);
  return acdr_estimate(source, f.gci_offset, options);
}

}  // namespace glotbench
