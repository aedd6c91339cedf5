#include "glotbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <tuple>

#include "glotbench/error.hpp"
#include "glotbench/glottal_model.hpp"
#include "glotbench/metrics.hpp"
#include "glotbench/zzt.hpp"

namespace glotbench {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::zzt: return "zzt";
    case Method::iaif: return "iaif";
    case Method::acdr_speech: return "acdr_speech";
    case Method::acdr_iaif: return "acdr_iaif";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorKind::config, "unknown method '" + std::string(name) + "'");
}

std::vector<Method> parse_method_list(std::string_view text) {
  std::vector<Method> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const Method m = parse_method(item);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    pos = comma + 1;
  }
  if (out.empty()) throw Error(ErrorKind::config, "method list is empty");
  return out;
}

std::vector<LfShape> default_lf_shapes() {
  return {{0.4, 0.8, 0.02}, {0.6, 0.67, 0.05}, {0.8, 0.6, 0.1}};
}

GridSpec GridSpec::desk() {
  GridSpec g;
  for (int f0 = 60; f0 <= 240; f0 += 20) g.f0_values.push_back(f0);
  g.vowels = {'a', 'e', 'i', 'u'};
  g.snr_values = {10, 20, 30, 40, 50, kClean};
  for (int i = -5; i <= 5; ++i) g.gci_error_fracs.push_back(i / 50.0);
  g.lf_shapes = default_lf_shapes();
  return g;
}

std::size_t GridSpec::cell_count() const {
  return f0_values.size() * vowels.size() * snr_values.size() * gci_error_fracs.size() *
         lf_shapes.size();
}

void GridSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::config, "grid: " + what); };
  if (cell_count() == 0) fail("every factor needs at least one level");
  for (double f0 : f0_values) {
    if (!(f0 > 0.0) || fs / f0 < kMinSamplesPerPeriod) fail("f0 out of range");
  }
  for (char v : vowels) {
    if (std::find(kVowels.begin(), kVowels.end(), v) == kVowels.end()) {
      fail(std::string("unknown vowel '") + v + "'");
    }
  }
  for (double s : snr_values) {
    if (std::isnan(s) || s == -kClean) fail("SNR must be finite or inf");
  }
  for (double e : gci_error_fracs) {
    if (!(std::abs(e) < 0.5)) fail("|gci error| must be < 0.5");
  }
  for (const LfShape& s : lf_shapes) {
    LfParams p{100.0, 1.0, s.oq, s.am, s.qa};
    try {
      p.validate();
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (n_periods < 5) fail("n_periods must be >= 5");
}

LfParams CellCondition::lf_params() const { return {f0, 1.0, shape.oq, shape.am, shape.qa}; }

bool condition_less(const CellCondition& a, const CellCondition& b) {
  return std::tie(a.f0, a.vowel, a.snr_db, a.gci_error_frac, a.shape) <
         std::tie(b.f0, b.vowel, b.snr_db, b.gci_error_frac, b.shape);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string format_condition(const CellCondition& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.12g|%c|%.12g|%.12g|%.12g|%.12g|%.12g|%zu", c.f0, c.vowel,
                c.snr_db, c.gci_error_frac, c.shape.oq, c.shape.am, c.shape.qa, c.n_periods);
  return buf;
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t global_seed, const CellCondition& cond) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(global_seed >> (8 * i)));
  for (char ch : format_condition(cond)) mix(static_cast<unsigned char>(ch));
  return splitmix64(h);
}

std::optional<double> MethodResult::rel_error(double fg_ref) const {
  if (!fg_est || !(fg_ref > 0.0)) return std::nullopt;
  return (*fg_est - fg_ref) / fg_ref;
}

MagnitudeSpectrum reference_spectrum(const LfParams& lf, int fs) {
  return normalize_mean_db(magnitude_spectrum_db(lf_pulse(lf, fs).samples, fs));
}

namespace {

void score(MethodResult& out, const MagnitudeSpectrum& est, const MagnitudeSpectrum& ref,
           double f0) {
  out.sd_db = spectral_distortion(normalize_mean_db(est), ref);
  try {
    out.fg_est = detect_glottal_formant(est, f0);
    out.status = "ok";
  } catch (const Error& e) {
    out.status = std::string(to_string(e.kind()));
  }
}

template <class Fn>
void run_method(MethodResult& out, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    out.status = std::string(to_string(e.kind()));
    out.sd_db.reset();
    out.fg_est.reset();
  } catch (const std::exception&) {
    out.status = "internal";
    out.sd_db.reset();
    out.fg_est.reset();
  }
}

}  // namespace

std::vector<double> one_period_segment(std::span<const double> estimate, std::size_t gci_offset,
                                       const WindowSpec& window_spec) {
  if (gci_offset >= estimate.size() || gci_offset < 2) {
    throw Error(ErrorKind::out_of_range, "GCI offset outside the estimate");
  }
  const long half = static_cast<long>(gci_offset / 2);
  const long g = static_cast<long>(gci_offset);
  const long n = static_cast<long>(estimate.size());
  std::vector<double> seg;
  seg.reserve(static_cast<std::size_t>(2 * half + 1));
  for (long i = g - half; i <= g + half; ++i) {
    seg.push_back(i >= 0 && i < n ? estimate[static_cast<std::size_t>(i)] : 0.0);
  }
  const auto w = window(window_spec, seg.size());
  for (std::size_t i = 0; i < seg.size(); ++i) seg[i] *= w[i];
  return seg;
}

std::vector<ExperimentRecord> run_cell(const CellCondition& cond, const RunOptions& options) {
  SynthesisCondition sc;
  sc.lf = cond.lf_params();
  sc.vowel = cond.vowel;
  sc.snr_db = cond.snr_db;
  sc.gci_error_frac = cond.gci_error_frac;
  sc.n_periods = cond.n_periods;
  sc.fs = cond.fs;
  sc.seed = cell_seed(options.global_seed, cond);
  const SampledSignal speech = synthesize(sc);
  const std::size_t t0 = period_samples(cond.f0, cond.fs);
  const auto gcis = perturb_gcis(speech.gcis, cond.gci_error_frac, t0, speech.size());

  const MagnitudeSpectrum ref = reference_spectrum(sc.lf, cond.fs);
  const double fg_ref = reference_glottal_formant(sc.lf, cond.fs);
  auto wanted = [&](Method m) {
    return std::find(options.methods.begin(), options.methods.end(), m) != options.methods.end();
  };
  const bool need_iaif = wanted(Method::iaif) || wanted(Method::acdr_iaif);
  const std::optional<double> f0_hint =
      options.iaif.use_dap ? std::optional<double>(cond.f0) : std::nullopt;

  std::vector<ExperimentRecord> records;
  for (std::size_t k = 1; k + 1 < gcis.size(); ++k) {
    ExperimentRecord rec;
    rec.cond = cond;
    rec.gci_index = k;
    rec.fg_ref = fg_ref;
    const Frame frame = extract_frame(speech.samples, gcis, k, cond.fs);

    if (wanted(Method::zzt)) {
      auto& out = rec.result(Method::zzt);
      run_method(out, [&] {
        const auto d = zzt_decompose(frame, options.zzt_window);
        score(out, anticausal_spectrum(d, cond.fs).spectrum, ref, cond.f0);
      });
    }
    if (wanted(Method::acdr_speech)) {
      auto& out = rec.result(Method::acdr_speech);
      run_method(out, [&] {
        const auto est = acdr_estimate(frame.samples, frame.gci_offset, options.acdr);
        score(out, magnitude_spectrum_db(est, cond.fs), ref, cond.f0);
      });
    }
    if (need_iaif) {
      std::vector<double> source;
      std::optional<Error> iaif_error;
      try {
        source = iaif(frame.samples, cond.fs, options.iaif, f0_hint);
      } catch (const Error& e) {
        iaif_error = e;
      }
      auto with_source = [&](MethodResult& out, auto&& fn) {
        run_method(out, [&] {
          if (iaif_error) throw *iaif_error;
          fn();
        });
      };
      if (wanted(Method::iaif)) {
        auto& out = rec.result(Method::iaif);
        with_source(out, [&] {
          score(out, magnitude_spectrum_db(
                         one_period_segment(source, frame.gci_offset, options.iaif_window),
                         cond.fs),
                ref, cond.f0);
        });
      }
      if (wanted(Method::acdr_iaif)) {
        auto& out = rec.result(Method::acdr_iaif);
        with_source(out, [&] {
          const auto est = acdr_estimate(source, frame.gci_offset, options.acdr);
          score(out, magnitude_spectrum_db(est, cond.fs), ref, cond.f0);
        });
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<CellCondition> enumerate_cells(const GridSpec& spec) {
  auto sorted = [](auto v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const auto f0s = sorted(spec.f0_values);
  const auto vowels = sorted(spec.vowels);
  const auto snrs = sorted(spec.snr_values);
  const auto errs = sorted(spec.gci_error_fracs);
  const auto shapes = sorted(spec.lf_shapes);
  std::vector<CellCondition> cells;
  cells.reserve(f0s.size() * vowels.size() * snrs.size() * errs.size() * shapes.size());
  for (double f0 : f0s)
    for (char v : vowels)
      for (double snr : snrs)
        for (double err : errs)
          for (const LfShape& shape : shapes)
            cells.push_back({f0, v, snr, err, shape, spec.n_periods, spec.fs});
  return cells;
}

GridResult run_grid(const GridSpec& spec, const RunOptions& options, unsigned jobs) {
  spec.validate();
  const auto cells = enumerate_cells(spec);
  std::vector<std::vector<ExperimentRecord>> per_cell(cells.size());
  std::vector<std::string> errors(cells.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        per_cell[i] = run_cell(cells[i], options);
      } catch (const std::exception& e) {
        errors[i] = format_condition(cells[i]) + ": " + e.what();
      }
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  GridResult result;
  result.cells = cells.size();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!errors[i].empty()) {
      ++result.failed_cells;
      result.failures.push_back(std::move(errors[i]));
      continue;
    }
    for (auto& rec : per_cell[i]) result.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace glotbench
