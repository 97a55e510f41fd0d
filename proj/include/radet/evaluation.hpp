#pragma once

/**
 * @file evaluation.hpp
 * @brief Detection scoring against ground truth: tolerant matching, frame
 *        averaging, ROC sweeps, curve comparison and cost benchmarking.
 */

#include <string>
#include <vector>

#include "radet/detectors.hpp"
#include "radet/simulator.hpp"
#include "radet/types.hpp"

namespace radet {

/// Per-frame match outcome under a +-tol_bins association rule. Matching is
/// independent per side: a label counts as detected when any detection lies
/// within tol_bins of it, and a detection counts as a false alarm when no
/// label lies within tol_bins of it (no one-to-one assignment).
struct MatchCounts {
  int n_detected = 0;  ///< labels with a detection within tolerance
  int n_false = 0;     ///< detections with no label within tolerance
  int n_labels = 0;
  int n_bins = 0;      ///< profile length, the false-alarm denominator
};

MatchCounts match_detections(const DetectionSet& detections, const LabelSet& labels,
                             int profile_len, int tol_bins = 5);

struct Aggregate {
  double p_d = 0.0;
  double p_fa = 0.0;
};

/// Mean of per-frame ratios: p_d averages n_detected/n_labels over frames
/// that have labels (0 when none do); p_fa averages n_false/n_bins over all
/// frames. Throws std::invalid_argument on empty input.
Aggregate aggregate(const std::vector<MatchCounts>& counts);

struct RocPoint {
  double threshold = 0.0;  ///< score-convention threshold (see sweep_threshold)
  double p_fa = 0.0;
  double p_d = 0.0;
};

struct RocCurve {
  std::string detector;  ///< detector id
  WindowConfig window;
  std::string params;    ///< non-threshold parameters, "k=v k=v" text
  std::vector<RocPoint> points;  ///< sorted by threshold ascending
};

/// Runs the detector at every natural-units threshold in `thresholds` over
/// every profile and aggregates. Points are recorded with the
/// score-convention threshold and sorted ascending, which makes p_d and p_fa
/// monotone non-increasing along the curve for every detector.
RocCurve roc_sweep(const Dataset& ds, const DetectorSpec& spec,
                   const std::vector<double>& thresholds, const WindowConfig& window,
                   int tol_bins = 5);

/// Detection probability of the curve at a given false-alarm rate: linear
/// interpolation on the monotone upper envelope in (p_fa, p_d). Below the
/// curve's smallest reachable p_fa the value is 0; above its largest, the
/// envelope maximum.
double pd_at_pfa(const RocCurve& curve, double pfa);

/// Mean p_d advantage of `ours` over `baseline` in absolute percentage
/// points across 20 log-spaced p_fa grid points in [1e-4, pfa_max].
/// Requires 0 < pfa_max <= 0.1.
double avg_gain(const RocCurve& ours, const RocCurve& baseline, double pfa_max);

/// Reachable operating extremes of the one-hot detector per slot count:
/// min_pfa at the threshold limit just below the score bound (only
/// empty-slot cells fire) and max_pd at threshold 0.
struct ReachablePoint {
  int dim = 0;
  double min_pfa = 0.0;
  double max_pd = 0.0;
};

std::vector<ReachablePoint> min_pfa_study(const Dataset& ds, const std::vector<int>& dims,
                                          const WindowConfig& window, int tol_bins = 5);

/// Inclusive threshold grid with `count` points from `first` to `last`,
/// linearly or geometrically spaced. Geometric spacing requires positive
/// endpoints. count >= 1; count == 1 yields {first}.
std::vector<double> threshold_grid(double first, double last, int count, bool geometric);

// ------------------------------------------------------------------- bench

struct BenchResult {
  std::string detector;
  double median_profile_seconds = 0.0;  ///< median over passes of per-profile time
  OpCounters ops;                       ///< totals over one pass of the dataset
  int n_profiles = 0;
  int n_passes = 0;
};

/// Times full-dataset detection passes (median of `passes` wall-clock runs,
/// after one warm-up) and tallies operation classes in a separate counted
/// pass. Counter output is deterministic.
BenchResult run_bench(const Dataset& ds, const DetectorSpec& spec, const WindowConfig& window,
                      int passes);

}  // namespace radet
