/**
 * @file radet_main.cpp
 * @brief Batch command-line front-end: dataset generation, detection, ROC
 *        sweeps, curve comparison, noise-distribution fitting and cost
 *        benchmarking, each run leaving a reproducibility manifest next to
 *        its outputs.
 *
 * Exit codes: 0 success, 1 environment/I/O failure, 2 usage error.
 */

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "radet/dataset_io.hpp"
#include "radet/detectors.hpp"
#include "radet/distfit.hpp"
#include "radet/evaluation.hpp"
#include "radet/manifest.hpp"
#include "radet/roc_io.hpp"
#include "radet/simulator.hpp"

namespace {

using namespace radet;

WindowConfig parse_window(const std::string& text, const std::string& boundary) {
  WindowConfig cfg;
  std::istringstream ss(text);
  char comma = 0;
  if (!(ss >> cfg.n_train >> comma >> cfg.n_guard) || comma != ',' || !ss.eof()) {
    throw std::invalid_argument("--window expects 'n_train,n_guard', got '" + text + "'");
  }
  if (boundary == "shrink") {
    cfg.boundary = Boundary::Shrink;
  } else if (boundary == "skip") {
    cfg.boundary = Boundary::Skip;
  } else {
    throw std::invalid_argument("--boundary must be 'shrink' or 'skip'");
  }
  validate(cfg);
  return cfg;
}

struct GridSpec {
  double first = 0.0;
  double last = 0.0;
  int count = 0;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  std::istringstream ss(text);
  char c1 = 0, c2 = 0;
  if (!(ss >> g.first >> c1 >> g.last >> c2 >> g.count) || c1 != ':' || c2 != ':' ||
      !ss.eof()) {
    throw std::invalid_argument("--grid expects 'first:last:count', got '" + text + "'");
  }
  if (g.count < 1) throw std::invalid_argument("--grid count must be >= 1");
  return g;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string window_text(const WindowConfig& cfg) {
  std::ostringstream os;
  os << cfg.n_train << "," << cfg.n_guard;
  return os.str();
}

// --------------------------------------------------------------- generate

int cmd_generate(const std::string& scenario_text, int frames, std::uint64_t seed,
                 const std::string& out_dir) {
  const Scenario sc = parse_scenario(scenario_text);
  if (frames < 1) throw std::invalid_argument("--frames must be >= 1");
  Dataset ds = make_dataset(sc, frames, seed);
  save_dataset(ds, out_dir);

  RunManifest m;
  m.command = "generate";
  m.parameters = {{"scenario", scenario_text},
                  {"frames", std::to_string(frames)},
                  {"out", out_dir}};
  m.seed = seed;
  m.outputs = {out_dir + "/meta.txt"};
  for (int f = 0; f < frames; ++f) {
    char name[32];
    std::snprintf(name, sizeof(name), "frames/%06d.txt", f);
    m.outputs.push_back(out_dir + "/" + name);
  }
  write_manifest(out_dir + "/manifest.json", m);
  std::cout << "wrote " << frames << " frames to " << out_dir << "\n";
  return 0;
}

// ----------------------------------------------------------------- detect

int cmd_detect(const std::string& data_dir, const std::string& spec_text,
               const std::string& window_arg, const std::string& boundary, int tol,
               const std::string& out_file) {
  const DetectorSpec spec = parse_detector_spec(spec_text);
  const WindowConfig cfg = parse_window(window_arg, boundary);
  const Dataset ds = load_dataset(data_dir);

  std::ofstream out(out_file);
  if (!out) throw std::runtime_error("cannot open output file '" + out_file + "'");
  out << "# radet detections 1\n";
  out << "# detector " << detector_id(spec.kind) << "\n";
  out << "# columns frame bin score\n";
  std::vector<MatchCounts> counts;
  counts.reserve(ds.profiles.size());
  for (std::size_t f = 0; f < ds.profiles.size(); ++f) {
    const DetectionSet det = detect(ds.profiles[f], cfg, spec);
    for (std::size_t i = 0; i < det.bins.size(); ++i) {
      out << ds.profiles[f].frame_id << " " << det.bins[i] << " " << fmt(det.scores[i])
          << "\n";
    }
    counts.push_back(match_detections(det, ds.labels[f],
                                      static_cast<int>(ds.profiles[f].magnitudes.size()),
                                      tol));
  }
  if (!out) throw std::runtime_error("write failed for '" + out_file + "'");
  out.close();

  const Aggregate agg = aggregate(counts);
  std::cout << "p_d " << fmt(agg.p_d) << "\n";
  std::cout << "p_fa " << fmt(agg.p_fa) << "\n";

  RunManifest m;
  m.command = "detect";
  m.parameters = {{"data", data_dir},
                  {"detector", spec_text},
                  {"window", window_text(cfg)},
                  {"boundary", boundary},
                  {"tol", std::to_string(tol)}};
  m.seed = ds.seed;
  m.outputs = {out_file};
  write_manifest(out_file + ".manifest.json", m);
  return 0;
}

// -------------------------------------------------------------------- roc

int cmd_roc(const std::string& data_dir, const std::string& spec_text,
            const std::string& window_arg, const std::string& boundary,
            const std::string& grid_text, const std::string& spacing, int tol,
            const std::string& out_file, const std::string& plot_file) {
  const DetectorSpec spec = parse_detector_spec(spec_text);
  const WindowConfig cfg = parse_window(window_arg, boundary);
  const GridSpec grid = parse_grid(grid_text);

  bool geometric = false;
  if (spacing == "auto") {
    geometric = threshold_is_geometric(spec.kind);
  } else if (spacing == "geometric") {
    geometric = true;
  } else if (spacing == "linear") {
    geometric = false;
  } else {
    throw std::invalid_argument("--spacing must be auto, linear or geometric");
  }
  const std::vector<double> thresholds =
      threshold_grid(grid.first, grid.last, grid.count, geometric);

  const Dataset ds = load_dataset(data_dir);
  const RocCurve roc = roc_sweep(ds, spec, thresholds, cfg, tol);
  write_roc(out_file, roc);
  std::cout << "wrote " << roc.points.size() << " operating points to " << out_file
            << "\n";

  RunManifest m;
  m.command = "roc";
  m.parameters = {{"data", data_dir},     {"detector", spec_text},
                  {"window", window_text(cfg)}, {"boundary", boundary},
                  {"grid", grid_text},    {"spacing", spacing},
                  {"tol", std::to_string(tol)}};
  m.seed = ds.seed;
  m.outputs = {out_file};
  if (!plot_file.empty()) {
    write_roc_svg(plot_file, {roc});
    m.outputs.push_back(plot_file);
    std::cout << "wrote plot to " << plot_file << "\n";
  }
  write_manifest(out_file + ".manifest.json", m);
  return 0;
}

// ------------------------------------------------------------------- gain

int cmd_gain(const std::string& ours_file, const std::string& baseline_file,
             double pfa_max) {
  const RocCurve ours = read_roc(ours_file);
  const RocCurve baseline = read_roc(baseline_file);
  const double gain = avg_gain(ours, baseline, pfa_max);
  std::cout << fmt(gain) << "\n";
  return 0;
}

// -------------------------------------------------------------------- fit

int cmd_fit(const std::string& data_dir, const std::string& family_text, int tol,
            const std::string& out_file) {
  std::vector<DistFamily> families;
  if (family_text == "all") {
    families = {DistFamily::Gaussian, DistFamily::Lognormal, DistFamily::Exponential,
                DistFamily::Gamma, DistFamily::Weibull};
  } else {
    std::stringstream ss(family_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) families.push_back(parse_dist_family(item));
    }
    if (families.empty()) throw std::invalid_argument("--family parsed to nothing");
  }

  const Dataset ds = load_dataset(data_dir);
  // Pool amplitudes from bins farther than `tol` from every label.
  std::vector<double> pool;
  for (std::size_t f = 0; f < ds.profiles.size(); ++f) {
    const Eigen::ArrayXd& mag = ds.profiles[f].magnitudes;
    const LabelSet& labels = ds.labels[f];
    for (Eigen::Index b = 0; b < mag.size(); ++b) {
      bool near_label = false;
      for (int lb : labels) {
        if (std::abs(static_cast<int>(b) - lb) <= tol) {
          near_label = true;
          break;
        }
      }
      if (!near_label) pool.push_back(mag[b]);
    }
  }
  if (pool.empty()) throw std::runtime_error("no noise bins left after label exclusion");
  Eigen::ArrayXd samples =
      Eigen::Map<const Eigen::ArrayXd>(pool.data(), static_cast<Eigen::Index>(pool.size()));

  const std::vector<FitResult> fits = fit_all(samples, families);
  write_fit_report(out_file, fits, pool.size());
  for (const FitResult& f : fits) {
    std::cout << dist_family_id(f.family) << " p1=" << fmt(f.p1) << " p2=" << fmt(f.p2)
              << " ks=" << fmt(f.ks) << "\n";
  }

  RunManifest m;
  m.command = "fit";
  m.parameters = {{"data", data_dir},
                  {"family", family_text},
                  {"tol", std::to_string(tol)}};
  m.seed = ds.seed;
  m.outputs = {out_file};
  write_manifest(out_file + ".manifest.json", m);
  return 0;
}

// ------------------------------------------------------------------ bench

int cmd_bench(const std::string& data_dir, const std::vector<std::string>& spec_texts,
              const std::string& window_arg, const std::string& boundary, int passes,
              const std::string& out_file) {
  if (spec_texts.empty()) throw std::invalid_argument("bench needs at least one --detector");
  if (passes < 1) throw std::invalid_argument("--passes must be >= 1");
  const WindowConfig cfg = parse_window(window_arg, boundary);
  const Dataset ds = load_dataset(data_dir);

  std::ostringstream table;
  table << "# radet bench 1\n";
  table << "# columns detector median_profile_seconds comparisons multiply_accumulates "
           "sort_ops\n";
  for (const std::string& text : spec_texts) {
    const DetectorSpec spec = parse_detector_spec(text);
    const BenchResult br = run_bench(ds, spec, cfg, passes);
    table << br.detector << " " << fmt(br.median_profile_seconds) << " "
          << br.ops.comparisons << " " << br.ops.multiply_accumulates << " "
          << br.ops.sort_ops << "\n";
  }
  const std::string rendered = table.str();
  std::cout << rendered;

  if (!out_file.empty()) {
    std::ofstream out(out_file);
    if (!out) throw std::runtime_error("cannot open output file '" + out_file + "'");
    out << rendered;
    if (!out) throw std::runtime_error("write failed for '" + out_file + "'");
    out.close();

    RunManifest m;
    m.command = "bench";
    std::string joined;
    for (std::size_t i = 0; i < spec_texts.size(); ++i) {
      if (i) joined += ";";
      joined += spec_texts[i];
    }
    m.parameters = {{"data", data_dir},
                    {"detectors", joined},
                    {"window", window_text(cfg)},
                    {"boundary", boundary},
                    {"passes", std::to_string(passes)}};
    m.seed = ds.seed;
    m.outputs = {out_file};
    write_manifest(out_file + ".manifest.json", m);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radar range-profile target detection toolkit"};
  app.require_subcommand(1);

  // generate
  std::string g_scenario, g_out;
  int g_frames = 100;
  std::uint64_t g_seed = 0;
  CLI::App* generate = app.add_subcommand("generate", "synthesize a labeled dataset");
  generate->add_option("--scenario", g_scenario,
                       "dense_indoor | two_walkers | homogeneous_noise | clutter_edge")
      ->required();
  generate->add_option("--frames", g_frames, "number of frames");
  generate->add_option("--seed", g_seed, "master seed");
  generate->add_option("--out", g_out, "output directory")->required();

  // detect
  std::string d_data, d_spec, d_window = "20,10", d_boundary = "shrink", d_out;
  int d_tol = 5;
  CLI::App* detect_cmd = app.add_subcommand("detect", "run one detector over a dataset");
  detect_cmd->add_option("--data", d_data, "dataset directory")->required();
  detect_cmd->add_option("--detector", d_spec, "detector spec, name:key=value,...")
      ->required();
  detect_cmd->add_option("--window", d_window, "training,guard cell counts");
  detect_cmd->add_option("--boundary", d_boundary, "shrink | skip");
  detect_cmd->add_option("--tol", d_tol, "label association tolerance in bins");
  detect_cmd->add_option("--out", d_out, "detections file")->required();

  // roc
  std::string r_data, r_spec, r_window = "20,10", r_boundary = "shrink", r_grid,
              r_spacing = "auto", r_out, r_plot;
  int r_tol = 5;
  CLI::App* roc_cmd = app.add_subcommand("roc", "sweep thresholds into a ROC file");
  roc_cmd->add_option("--data", r_data, "dataset directory")->required();
  roc_cmd->add_option("--detector", r_spec, "detector spec")->required();
  roc_cmd->add_option("--window", r_window, "training,guard cell counts");
  roc_cmd->add_option("--boundary", r_boundary, "shrink | skip");
  roc_cmd->add_option("--grid", r_grid, "threshold grid first:last:count")->required();
  roc_cmd->add_option("--spacing", r_spacing, "auto | linear | geometric");
  roc_cmd->add_option("--tol", r_tol, "label association tolerance in bins");
  roc_cmd->add_option("--out", r_out, "ROC output file")->required();
  roc_cmd->add_option("--plot", r_plot, "optional SVG plot file");

  // gain
  std::string ga_ours, ga_base;
  double ga_pfa_max = 0.01;
  CLI::App* gain_cmd =
      app.add_subcommand("gain", "average detection-probability gain between ROC files");
  gain_cmd->add_option("--ours", ga_ours, "ROC file under test")->required();
  gain_cmd->add_option("--baseline", ga_base, "baseline ROC file")->required();
  gain_cmd->add_option("--pfa-max", ga_pfa_max, "upper false-alarm bound, in (0, 0.1]");

  // fit
  std::string f_data, f_family = "all", f_out;
  int f_tol = 5;
  CLI::App* fit_cmd =
      app.add_subcommand("fit", "fit noise-bin amplitudes to distribution families");
  fit_cmd->add_option("--data", f_data, "dataset directory")->required();
  fit_cmd->add_option("--family", f_family,
                      "all or comma list of gaussian,lognormal,exponential,gamma,weibull");
  fit_cmd->add_option("--tol", f_tol, "bins within this distance of a label are excluded");
  fit_cmd->add_option("--out", f_out, "fit report file")->required();

  // bench
  std::string b_data, b_window = "20,10", b_boundary = "shrink", b_out;
  std::vector<std::string> b_specs;
  int b_passes = 10;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "time detectors and tally operation classes");
  bench_cmd->add_option("--data", b_data, "dataset directory")->required();
  bench_cmd->add_option("--detector", b_specs, "detector spec (repeatable)")->required();
  bench_cmd->add_option("--window", b_window, "training,guard cell counts");
  bench_cmd->add_option("--boundary", b_boundary, "shrink | skip");
  bench_cmd->add_option("--passes", b_passes, "timed passes over the dataset");
  bench_cmd->add_option("--out", b_out, "optional bench table file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (generate->parsed()) return cmd_generate(g_scenario, g_frames, g_seed, g_out);
    if (detect_cmd->parsed())
      return cmd_detect(d_data, d_spec, d_window, d_boundary, d_tol, d_out);
    if (roc_cmd->parsed())
      return cmd_roc(r_data, r_spec, r_window, r_boundary, r_grid, r_spacing, r_tol, r_out,
                     r_plot);
    if (gain_cmd->parsed()) return cmd_gain(ga_ours, ga_base, ga_pfa_max);
    if (fit_cmd->parsed()) return cmd_fit(f_data, f_family, f_tol, f_out);
    if (bench_cmd->parsed())
      return cmd_bench(b_data, b_specs, b_window, b_boundary, b_passes, b_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
