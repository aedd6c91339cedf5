// glotbench: synthetic glottal source estimation benchmark.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "glotbench/acdr.hpp"
#include "glotbench/error.hpp"
#include "glotbench/glottal_model.hpp"
#include "glotbench/grid_config.hpp"
#include "glotbench/harness.hpp"
#include "glotbench/iaif.hpp"
#include "glotbench/metrics.hpp"
#include "glotbench/report.hpp"
#include "glotbench/signal_io.hpp"
#include "glotbench/zzt.hpp"

namespace fs = std::filesystem;
using namespace glotbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct ConditionArgs {
  double f0 = 100.0;
  std::string vowel = "a";
  std::string snr = "inf";
  double gci_error = 0.0;
  double oq = 0.6, am = 0.67, qa = 0.05;
  std::size_t periods = 10;
  std::uint64_t seed = 0;
  std::string out = ".";

  void add_to(CLI::App& app) {
    app.add_option("--f0", f0, "Fundamental frequency in Hz")->capture_default_str();
    app.add_option("--vowel", vowel, "Vowel: a, e, i or u")->capture_default_str();
    app.add_option("--snr", snr, "SNR in dB, or inf for clean")->capture_default_str();
    app.add_option("--gci-error", gci_error, "GCI shift as a fraction of T0")
        ->capture_default_str();
    app.add_option("--oq", oq, "Open quotient")->capture_default_str();
    app.add_option("--am", am, "Asymmetry coefficient")->capture_default_str();
    app.add_option("--qa", qa, "Return-phase quotient")->capture_default_str();
    app.add_option("--periods", periods, "Number of periods")->capture_default_str();
    app.add_option("--seed", seed, "Noise seed")->capture_default_str();
    app.add_option("--out", out, "Output directory")->capture_default_str();
  }

  SynthesisCondition condition() const {
    if (vowel.size() != 1) throw Error(ErrorKind::config, "vowel must be one letter");
    SynthesisCondition c;
    c.lf = {f0, 1.0, oq, am, qa};
    c.vowel = vowel[0];
    if (snr == "inf" || snr == "clean") {
      c.snr_db = kClean;
    } else {
      try {
        c.snr_db = std::stod(snr);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::config, "bad --snr value '" + snr + "'");
      }
    }
    c.gci_error_frac = gci_error;
    c.n_periods = periods;
    c.seed = seed;
    return c;
  }
};

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + dir + ": " + ec.message());
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::io, "cannot write " + path.string());
  return f;
}

int run_synth(const ConditionArgs& args) {
  const SynthesisCondition cond = args.condition();
  const Utterance u = synthesize_utterance(cond);
  SampledSignal speech = u.speech;
  const std::size_t t0 = period_samples(cond.lf.f0, cond.fs);
  speech.gcis = perturb_gcis(speech.gcis, cond.gci_error_frac, t0, speech.size());

  const fs::path dir = prepare_dir(args.out);
  write_wav(dir / "speech.wav", speech.samples, speech.fs);
  write_wav(dir / "source.wav", u.source.samples, u.source.fs);
  {
    auto f = open_out(dir / "speech.csv");
    write_signal_csv(f, speech);
  }
  {
    auto f = open_out(dir / "source.csv");
    write_signal_csv(f, u.source);
  }
  std::printf("wrote %zu samples, %zu GCIs to %s\n", speech.size(), speech.gcis.size(),
              dir.string().c_str());
  return kExitOk;
}

int run_decompose(const ConditionArgs& args, const std::string& method_name, std::size_t k,
                  bool use_dap) {
  const Method method = parse_method(method_name);
  const SynthesisCondition cond = args.condition();
  SampledSignal speech = synthesize(cond);
  const std::size_t t0 = period_samples(cond.lf.f0, cond.fs);
  speech.gcis = perturb_gcis(speech.gcis, cond.gci_error_frac, t0, speech.size());
  if (k == 0 || k + 1 >= speech.gcis.size()) {
    throw Error(ErrorKind::config, "--gci-index must name an interior GCI (1.." +
                                       std::to_string(speech.gcis.size() - 2) + ")");
  }
  IaifConfig iaif_cfg;
  iaif_cfg.use_dap = use_dap;
  const std::optional<double> hint =
      use_dap ? std::optional<double>(cond.lf.f0) : std::nullopt;
  const Frame frame = extract_frame(speech, k);
  const fs::path dir = prepare_dir(args.out);

  std::vector<double> estimate;
  MagnitudeSpectrum spec;
  switch (method) {
    case Method::zzt: {
      const auto d = zzt_decompose(frame);
      auto f = open_out(dir / "roots.csv");
      write_roots_csv(f, d);
      spec = anticausal_spectrum(d, cond.fs).spectrum;
      break;
    }
    case Method::iaif: {
      estimate = one_period_segment(iaif(frame.samples, cond.fs, iaif_cfg, hint),
                                    frame.gci_offset);
      break;
    }
    case Method::acdr_speech:
      estimate = acdr_estimate(frame.samples, frame.gci_offset);
      break;
    case Method::acdr_iaif:
      estimate = acdr_estimate(iaif(frame.samples, cond.fs, iaif_cfg, hint), frame.gci_offset);
      break;
  }
  if (method != Method::zzt) {
    spec = magnitude_spectrum_db(estimate, cond.fs);
    auto f = open_out(dir / "estimate.csv");
    SampledSignal sig;
    sig.samples = estimate;
    sig.fs = cond.fs;
    write_signal_csv(f, sig);
  }
  spec = normalize_mean_db(spec);
  const MagnitudeSpectrum ref = reference_spectrum(cond.lf, cond.fs);
  {
    auto f = open_out(dir / "spectrum.csv");
    write_spectrum_csv(f, spec);
  }
  {
    auto f = open_out(dir / "reference_spectrum.csv");
    write_spectrum_csv(f, ref);
  }
  const double fg_ref = reference_glottal_formant(cond.lf, cond.fs);
  std::printf("method %s, GCI %zu\n", std::string(to_string(method)).c_str(), k);
  std::printf("spectral distortion: %.4f dB\n", spectral_distortion(spec, ref));
  try {
    const double fg = detect_glottal_formant(spec, cond.lf.f0);
    std::printf("glottal formant: %.2f Hz (reference %.0f Hz, error %+.2f%%)\n", fg, fg_ref,
                100.0 * (fg - fg_ref) / fg_ref);
  } catch (const Error& e) {
    std::printf("glottal formant: not found (%s)\n", e.what());
  }
  return kExitOk;
}

int run_bench(const std::string& grid_file, std::uint64_t seed, unsigned jobs,
              const std::string& out, const std::string& methods, bool use_dap, bool with_report) {
  const GridSpec spec = grid_file.empty() ? GridSpec::desk() : load_grid_config(grid_file);
  spec.validate();
  RunOptions opts;
  opts.methods = parse_method_list(methods);
  opts.global_seed = seed;
  opts.iaif.use_dap = use_dap;
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());

  std::printf("grid: %zu cells (%zu f0 x %zu vowels x %zu snr x %zu gci x %zu shapes), %u jobs\n",
              spec.cell_count(), spec.f0_values.size(), spec.vowels.size(),
              spec.snr_values.size(), spec.gci_error_fracs.size(), spec.lf_shapes.size(), jobs);
  std::fflush(stdout);
  const auto start = std::chrono::steady_clock::now();
  const GridResult result = run_grid(spec, opts, jobs);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const fs::path dir = prepare_dir(out);
  {
    auto f = open_out(dir / "records.csv");
    write_records_csv(f, result.records);
    f.close();
    if (!f) throw Error(ErrorKind::io, "error writing " + (dir / "records.csv").string());
  }
  if (!result.failures.empty()) {
    auto f = open_out(dir / "failures.txt");
    for (const auto& msg : result.failures) f << msg << '\n';
  }
  std::printf("%zu records from %zu cells in %.1f s; %zu cells failed\n", result.records.size(),
              result.cells, secs, result.failed_cells);
  for (Method m : opts.methods) {
    const auto errs = fg_errors(result.records, m);
    if (errs.empty()) continue;
    double sd = 0.0;
    std::size_t n_sd = 0;
    for (const auto& rec : result.records) {
      if (const auto& v = rec.result(m).sd_db) {
        sd += *v;
        ++n_sd;
      }
    }
    std::printf("  %-12s mean SD %7.3f dB  rate %.3f  (%zu frames, %zu without SD)\n",
                std::string(to_string(m)).c_str(), n_sd ? sd / n_sd : std::nan(""),
                determination_rate(errs), errs.size(), errs.size() - n_sd);
  }
  if (with_report && !result.records.empty()) export_report(result.records, dir);
  if (result.failed_cells == result.cells) {
    std::fprintf(stderr, "every cell failed\n");
    for (std::size_t i = 0; i < std::min<std::size_t>(3, result.failures.size()); ++i) {
      std::fprintf(stderr, "  %s\n", result.failures[i].c_str());
    }
    return kExitFailure;
  }
  return kExitOk;
}

int run_report(const std::string& records_file, const std::string& out) {
  std::ifstream in(records_file);
  if (!in) throw Error(ErrorKind::config, "cannot open records file " + records_file);
  const auto records = read_records_csv(in);
  if (records.empty()) throw Error(ErrorKind::empty_input, "records file has no rows");
  const auto files = export_report(records, prepare_dir(out));
  for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Glottal source estimation benchmark on synthetic speech"};
  app.require_subcommand(1);

  ConditionArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Synthesise one utterance (WAV + CSV)");
  synth_args.add_to(*synth);

  ConditionArgs dec_args;
  std::string dec_method = "zzt";
  std::size_t dec_k = 1;
  bool dec_dap = false;
  auto* decompose = app.add_subcommand("decompose", "Run one method on one frame");
  dec_args.add_to(*decompose);
  decompose->add_option("--method", dec_method, "zzt, iaif, acdr_speech or acdr_iaif")
      ->capture_default_str();
  decompose->add_option("--gci-index", dec_k, "Interior GCI to analyse")->capture_default_str();
  decompose->add_flag("--use-dap", dec_dap, "Use DAP instead of LPC inside IAIF");

  std::string grid_file, bench_out = "bench_out", bench_methods = "zzt,iaif,acdr_speech,acdr_iaif";
  std::uint64_t bench_seed = 0;
  unsigned bench_jobs = 1;
  bool bench_dap = false, bench_report = false;
  auto* bench = app.add_subcommand("bench", "Run the condition grid");
  bench->add_option("--grid", grid_file, "Grid file (key = value or JSON); default desk grid");
  bench->add_option("--seed", bench_seed, "Global seed")->capture_default_str();
  bench->add_option("--jobs", bench_jobs, "Worker threads, 0 for all cores")
      ->capture_default_str();
  bench->add_option("--out", bench_out, "Output directory")->capture_default_str();
  bench->add_option("--methods", bench_methods, "Comma-separated methods")
      ->capture_default_str();
  bench->add_flag("--use-dap", bench_dap, "Use DAP instead of LPC inside IAIF");
  bench->add_flag("--report", bench_report, "Also write report tables and plots");

  std::string records_file, report_out = "report";
  auto* report = app.add_subcommand("report", "Aggregate records into tables and plots");
  report->add_option("records", records_file, "records.csv from bench")->required();
  report->add_option("--out", report_out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*synth) return run_synth(synth_args);
    if (*decompose) return run_decompose(dec_args, dec_method, dec_k, dec_dap);
    if (*bench) {
      return run_bench(grid_file, bench_seed, bench_jobs, bench_out, bench_methods, bench_dap,
                       bench_report);
    }
    if (*report) return run_report(records_file, report_out);
  } catch (const Error& e) {
    std::fprintf(stderr, "glotbench: %s\n", e.what());
    const bool config = e.kind() == ErrorKind::config ||
                        e.kind() == ErrorKind::invalid_parameter ||
                        e.kind() == ErrorKind::unknown_vowel ||
                        e.kind() == ErrorKind::too_few_samples ||
                        e.kind() == ErrorKind::out_of_range;
    return config ? kExitConfig : kExitFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "glotbench: %s\n", e.what());
    return kExitFailure;
  }
  return kExitConfig;
}
