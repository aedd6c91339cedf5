#include "glotbench/signal_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "glotbench/error.hpp"

namespace glotbench {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
                     static_cast<char>(v >> 24)};
  out.write(b, 4);
}

void put_u16(std::ostream& out, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

}  // namespace

void write_wav(const std::filesystem::path& path, std::span<const double> samples, int fs) {
  if (fs <= 0) throw Error(ErrorKind::invalid_parameter, "sample rate must be positive");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());

  double peak = 0.0;
  for (double v : samples) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0.0 ? 0.9 * 32767.0 / peak : 0.0;
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);

  out.write("RIFF", 4);
  put_u32(out, 36 + data_bytes);
  out.write("WAVEfmt ", 8);
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<std::uint32_t>(fs));
  put_u32(out, static_cast<std::uint32_t>(fs) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  out.write("data", 4);
  put_u32(out, data_bytes);
  for (double v : samples) {
    const long q = std::lround(v * scale);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L))));
  }
  out.close();
  if (!out) throw Error(ErrorKind::io, "error writing " + path.string());
}

void write_signal_csv(std::ostream& out, const SampledSignal& signal) {
  out << "index,time_s,value,is_gci\n";
  std::size_t next_gci = 0;
  char buf[96];
  for (std::size_t i = 0; i < signal.samples.size(); ++i) {
    bool gci = false;
    if (next_gci < signal.gcis.size() && signal.gcis[next_gci] == i) {
      gci = true;
      ++next_gci;
    }
    std::snprintf(buf, sizeof buf, "%zu,%.9g,%.12g,%d\n", i,
                  static_cast<double>(i) / signal.fs, signal.samples[i], gci ? 1 : 0);
    out << buf;
  }
}

void write_spectrum_csv(std::ostream& out, const MagnitudeSpectrum& spec) {
  out << "freq_hz,magnitude_db\n";
  char buf[64];
  for (std::size_t k = 0; k < spec.values_db.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.9g\n", k, spec.values_db[k]);
    out << buf;
  }
}

}  // namespace glotbench
