#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "ssvep/dataset.hpp"
#include "ssvep/errors.hpp"
#include "ssvep/evaluation.hpp"
#include "ssvep/fusion.hpp"
#include "ssvep/synthetic.hpp"
#include "ssvep/templates.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace ssvep::cli {
namespace {

class UsageError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw UsageError("not a number: '" + raw + "'");
  return v;
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw UsageError("range must be start:step:end, got '" + text + "'");
  const double start = parse_number(parts[0]);
  const double step = parse_number(parts[1]);
  const double end = parse_number(parts[2]);
  if (!std::isfinite(start) || !std::isfinite(end) || !(step > 0.0) || !std::isfinite(step) || end < start)
    throw UsageError("range needs finite start <= end and a positive step: '" + text + "'");
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double v = start + static_cast<double>(k) * step;
    if (v > end + 1e-9) break;
    out.push_back(v);
    if (out.size() > 1000000) throw UsageError("range too long: '" + text + "'");
  }
  return out;
}

std::string join(const std::vector<double>& values, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision);
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << values[i];
  return os.str();
}

std::size_t checked_index(long long value, std::size_t limit, const char* what) {
  if (value < 0 || static_cast<unsigned long long>(value) >= limit)
    throw UsageError(std::string(what) + " index " + std::to_string(value) + " out of range [0, " +
                     std::to_string(limit) + ")");
  return static_cast<std::size_t>(value);
}

// --- shared flag groups ---------------------------------------------------

struct ParamFlags {
  FusionParams params;
  std::string start_text;

  void add_structure(CLI::App* app) {
    app->add_option("--sn", params.sn, "number of subbands")->capture_default_str();
    app->add_option("--tau", params.tau, "delay-embedding lag in samples")->capture_default_str();
    app->add_option("--ridge", params.ridge, "relative covariance ridge")->capture_default_str();
    app->add_option("--order", params.filter.order, "bandpass order (even)")->capture_default_str();
    app->add_option("--ripple", params.filter.ripple_db, "passband ripple in dB")->capture_default_str();
    app->add_option("--high", params.filter.high_hz, "upper cutoff of every subband in Hz")->capture_default_str();
    app->add_option("--start", start_text, "window start in seconds (default: dataset latency)");
  }
  void add_weights(CLI::App* app) {
    app->add_option("--a1", params.a1, "channel weight decay")->capture_default_str();
    app->add_option("--b1", params.b1, "channel weight offset")->capture_default_str();
    app->add_option("--a2", params.a2, "band weight decay")->capture_default_str();
    app->add_option("--b2", params.b2, "band weight offset")->capture_default_str();
  }
  double start_for(const SsvepDataset& ds) const {
    if (start_text.empty()) return ds.visual_latency_s();
    const double s = parse_number(start_text);
    if (!std::isfinite(s) || s < 0.0) throw UsageError("--start must be a finite non-negative time");
    return s;
  }
};

SsvepDataset load(const std::string& path) {
  if (path.empty()) throw UsageError("--data is required");
  return read_dataset(path);
}

// --- synth ----------------------------------------------------------------

struct SynthFlags {
  std::string freqs = "9.25:0.5:14.75";
  std::string phases;
  std::string snr = "inf";
  std::string out;
  SynthSpec spec = reference_synth_spec();
};

int cmd_synth(SynthFlags& f, std::ostream& out) {
  SynthSpec spec = f.spec;
  spec.frequencies_hz = parse_values(f.freqs);
  spec.phases_rad = f.phases.empty() ? quarter_cycle_phases(spec.frequencies_hz.size()) : parse_values(f.phases);
  spec.snr_db = parse_number(f.snr);
  spec.validate();
  const SsvepDataset ds = generate_ssvep(spec);
  write_dataset(ds, f.out);
  out << "wrote " << f.out << "\n"
      << "shape (" << ds.n_channels() << ", " << ds.n_samples() << ", " << ds.n_trials() << ", "
      << ds.n_frequencies() << ")  channels x samples x trials x frequencies\n"
      << "seed " << spec.seed << "  snr " << spec.snr_db << " dB  fs " << spec.sample_rate_hz << " Hz\n";
  return kExitOk;
}

// --- bench ----------------------------------------------------------------

struct BenchFlags {
  std::string data;
  std::string out;
  std::string method = "both";
  std::string windows = "1.0";
  std::string subject;
  std::size_t threads = 0;
  ParamFlags p;
};

int cmd_bench(BenchFlags& f, std::ostream& out) {
  const std::vector<double> windows = parse_values(f.windows);
  if (windows.empty()) throw UsageError("--windows needs at least one value");
  if (f.method != "both" && f.method != "proposed" && f.method != "baseline")
    throw UsageError("--method must be proposed, baseline or both");
  f.p.params.validate();

  const SsvepDataset ds = load(f.data);
  const double start = f.p.start_for(ds);
  EvalOptions opts;
  opts.subject_id = f.subject.empty() ? std::filesystem::path(f.data).stem().string() : f.subject;
  opts.threads = f.threads;

  std::vector<EvalReport> reports;
  if (f.method == "both") {
    reports = compare_methods(ds, f.p.params, windows, start, opts);
  } else {
    const Method m = parse_method(f.method);
    for (double w : windows) reports.push_back(evaluate_loocv(ds, m, f.p.params, w, start, opts));
  }

  out << std::left << std::setw(10) << "method" << std::right << std::setw(10) << "window_s" << std::setw(10)
      << "accuracy" << std::setw(12) << "itr" << std::setw(12) << "correct" << "\n";
  for (const auto& r : reports) {
    const EvalRow& row = r.rows.front();
    out << std::left << std::setw(10) << (r.method == Method::baseline_sscca ? "baseline" : "proposed")
        << std::right << std::fixed << std::setprecision(3) << std::setw(10) << row.window_s << std::setw(10)
        << row.accuracy << std::setprecision(2) << std::setw(12) << row.itr_bits_per_min << std::setw(12)
        << (std::to_string(row.n_correct) + "/" + std::to_string(row.n_total)) << "\n";
  }
  out.unsetf(std::ios::floatfield);
  out << "start " << start << " s, " << ds.n_trials() << " folds\n";

  if (!f.out.empty()) {
    write_results_csv(collect_rows(reports), f.out);
    out << "wrote " << f.out << "\n";
  }
  return kExitOk;
}

// --- gridsearch -----------------------------------------------------------

struct GridFlags {
  std::string data;
  std::string out;
  std::string a1, b1, a2, b2;
  double window = 1.0;
  std::size_t threads = 0;
  ParamFlags p;
  CLI::Option* a1_opt = nullptr;
  CLI::Option* b1_opt = nullptr;
  CLI::Option* a2_opt = nullptr;
  CLI::Option* b2_opt = nullptr;
};

std::vector<double> grid_axis(const CLI::Option* opt, const std::string& text, const std::vector<double>& fallback,
                              const char* name) {
  if (opt->count() == 0) return fallback;
  std::vector<double> v = parse_values(text);
  if (v.empty()) throw UsageError(std::string("grid ") + name + " is empty");
  return v;
}

int cmd_gridsearch(GridFlags& f, std::ostream& out) {
  const FusionGrid defaults = FusionGrid::defaults();
  FusionGrid grid;
  grid.a1 = grid_axis(f.a1_opt, f.a1, defaults.a1, "--a1");
  grid.b1 = grid_axis(f.b1_opt, f.b1, defaults.b1, "--b1");
  grid.a2 = grid_axis(f.a2_opt, f.a2, defaults.a2, "--a2");
  grid.b2 = grid_axis(f.b2_opt, f.b2, defaults.b2, "--b2");
  f.p.params.validate();

  const SsvepDataset ds = load(f.data);
  const double start = f.p.start_for(ds);
  const GridSearchResult res = grid_search(ds, grid, f.window, start, f.p.params, f.threads);

  out << "grid of " << grid.size() << " tuples, window " << f.window << " s, start " << start << " s\n"
      << "best a1=" << res.best.a1 << " b1=" << res.best.b1 << " a2=" << res.best.a2 << " b2=" << res.best.b2
      << "  accuracy " << std::fixed << std::setprecision(3) << res.best_accuracy << "\n";
  out.unsetf(std::ios::floatfield);

  if (!f.out.empty()) {
    std::ostringstream csv;
    csv << "a1,b1,a2,b2,accuracy\n";
    for (const auto& g : res.table)
      csv << format_shortest(g.a1) << ',' << format_shortest(g.b1) << ',' << format_shortest(g.a2) << ','
          << format_shortest(g.b2) << ',' << format_shortest(g.accuracy) << '\n';
    std::ofstream file(f.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + f.out + " for writing");
    file << csv.str();
    if (!file.flush()) throw IoError("write failed: " + f.out);
    out << "wrote " << f.out << "\n";
  }
  return kExitOk;
}

// --- recognize ------------------------------------------------------------

struct RecognizeFlags {
  std::string data;
  long long trial = 0;
  long long freq = 0;
  double window = 1.0;
  ParamFlags p;
};

int cmd_recognize(RecognizeFlags& f, std::ostream& out) {
  f.p.params.validate();
  const SsvepDataset ds = load(f.data);
  const std::size_t trial = checked_index(f.trial, ds.n_trials(), "--trial");
  const std::size_t freq = checked_index(f.freq, ds.n_frequencies(), "--freq");
  if (ds.n_trials() < 2) throw UsageError("need at least one other trial to build templates");
  const double start = f.p.start_for(ds);

  const SampleWindow win = window_for(ds, start, f.window);
  std::vector<std::size_t> train;
  for (std::size_t t = 0; t < ds.n_trials(); ++t)
    if (t != trial) train.push_back(t);
  const TemplateBank bank = build_templates(ds, train, win);
  const DecisionScores d = recognize(ds.slice(trial, freq, win.first, win.count), bank, ds.base_frequency_hz(),
                                     f.p.params);

  nlohmann::ordered_json j;
  j["chosen_index"] = d.chosen;
  j["chosen_hz"] = ds.frequencies_hz()[d.chosen];
  j["psi"] = d.psi;
  out << j.dump(2) << "\n";
  return kExitOk;
}

// --- inspect --------------------------------------------------------------

int cmd_inspect(const std::string& path, std::ostream& out) {
  const SsvepDataset ds = load(path);
  const auto& m = ds.metadata();
  std::vector<double> rms(ds.n_channels(), 0.0);
  for (std::size_t f = 0; f < ds.n_frequencies(); ++f)
    for (std::size_t t = 0; t < ds.n_trials(); ++t)
      for (std::size_t c = 0; c < ds.n_channels(); ++c)
        for (std::size_t s = 0; s < ds.n_samples(); ++s) {
          const double v = ds.at(c, s, t, f);
          rms[c] += v * v;
        }
  const double per_channel = static_cast<double>(ds.n_samples() * ds.n_trials() * ds.n_frequencies());
  for (double& r : rms) r = std::sqrt(r / per_channel);

  out << path << "\n"
      << "  shape        (" << ds.n_channels() << ", " << ds.n_samples() << ", " << ds.n_trials() << ", "
      << ds.n_frequencies() << ")\n"
      << "  rate         " << m.sample_rate_hz << " Hz\n"
      << "  latency      " << m.visual_latency_s << " s\n"
      << "  duration     " << static_cast<double>(ds.n_samples()) / m.sample_rate_hz << " s\n"
      << "  frequencies  " << join(m.stim_frequencies_hz) << "\n"
      << "  phases       " << join(m.stim_phases_rad, 4) << "\n"
      << "  channels     ";
  for (std::size_t c = 0; c < m.channel_labels.size(); ++c) out << (c ? ", " : "") << m.channel_labels[c];
  out << "\n  rms          " << join(rms, 4) << "\n";
  return kExitOk;
}

}  // namespace

std::vector<double> parse_values(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) return {};
  if (s.find(':') != std::string::npos) return parse_range(s);
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_number(item));
  if (s.back() == ',') throw UsageError("trailing comma in '" + text + "'");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SSVEP frequency recognition toolkit"};
  app.name("ssvep");
  app.require_subcommand(1);

  SynthFlags sf;
  auto* synth = app.add_subcommand("synth", "generate a synthetic .ssvp dataset");
  synth->add_option("--freqs", sf.freqs, "frequencies, start:step:end or comma list")->capture_default_str();
  synth->add_option("--phases", sf.phases, "phases in radians, comma list (default: quarter cycles)");
  synth->add_option("--channels", sf.spec.n_channels)->capture_default_str();
  synth->add_option("--trials", sf.spec.n_trials)->capture_default_str();
  synth->add_option("--dur", sf.spec.duration_s, "record length in seconds")->capture_default_str();
  synth->add_option("--fs", sf.spec.sample_rate_hz, "sample rate in Hz")->capture_default_str();
  synth->add_option("--harmonics", sf.spec.n_harmonics)->capture_default_str();
  synth->add_option("--snr", sf.snr, "per-channel SNR in dB, or inf")->capture_default_str();
  synth->add_option("--seed", sf.spec.seed)->capture_default_str();
  synth->add_flag("--identity-mixing", sf.spec.identity_mixing, "skip spatial mixing (needs harmonics <= channels)");
  synth->add_option("--out", sf.out, "output .ssvp path")->required();

  BenchFlags bf;
  auto* bench = app.add_subcommand("bench", "leave-one-out accuracy and ITR per window");
  bench->add_option("--data", bf.data, ".ssvp dataset")->required();
  bench->add_option("--out", bf.out, "results CSV");
  bench->add_option("--method", bf.method, "proposed, baseline or both")->capture_default_str();
  bench->add_option("--windows", bf.windows, "window lengths in seconds")->capture_default_str();
  bench->add_option("--subject", bf.subject, "subject id for the CSV (default: file stem)");
  bench->add_option("--threads", bf.threads, "worker cap, 0 = auto")->capture_default_str();
  bf.p.add_structure(bench);
  bf.p.add_weights(bench);

  GridFlags gf;
  auto* grid = app.add_subcommand("gridsearch", "exhaustive search over the fusion weights");
  grid->add_option("--data", gf.data, ".ssvp dataset")->required();
  grid->add_option("--out", gf.out, "grid table CSV");
  gf.a1_opt = grid->add_option("--a1", gf.a1, "a1 grid (default 0.2:0.2:1.6)");
  gf.b1_opt = grid->add_option("--b1", gf.b1, "b1 grid (default 0:0.1:0.5)");
  gf.a2_opt = grid->add_option("--a2", gf.a2, "a2 grid (default 0.5:0.5:3)");
  gf.b2_opt = grid->add_option("--b2", gf.b2, "b2 grid (default 0,0.25,0.5)");
  grid->add_option("--window", gf.window, "window length in seconds")->capture_default_str();
  grid->add_option("--threads", gf.threads, "worker cap, 0 = auto")->capture_default_str();
  gf.p.add_structure(grid);

  RecognizeFlags rf;
  auto* rec = app.add_subcommand("recognize", "classify one record against the other trials");
  rec->add_option("--data", rf.data, ".ssvp dataset")->required();
  rec->add_option("--trial", rf.trial, "test trial index")->required();
  rec->add_option("--freq", rf.freq, "test frequency index")->required();
  rec->add_option("--window", rf.window, "window length in seconds")->capture_default_str();
  rf.p.add_structure(rec);
  rf.p.add_weights(rec);

  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "print a dataset header");
  inspect->add_option("data", inspect_path, ".ssvp dataset")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth->parsed()) return cmd_synth(sf, out);
    if (bench->parsed()) return cmd_bench(bf, out);
    if (grid->parsed()) return cmd_gridsearch(gf, out);
    if (rec->parsed()) return cmd_recognize(rf, out);
    if (inspect->parsed()) return cmd_inspect(inspect_path, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace ssvep::cli
