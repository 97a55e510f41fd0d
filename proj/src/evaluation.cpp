#include "radet/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace radet {

MatchCounts match_detections(const DetectionSet& detections, const LabelSet& labels,
                             int profile_len, int tol_bins) {
  if (profile_len < 1) throw std::invalid_argument("profile_len must be >= 1");
  if (tol_bins < 0) throw std::invalid_argument("tol_bins must be >= 0");

  MatchCounts mc;
  mc.n_labels = static_cast<int>(labels.size());
  mc.n_bins = profile_len;
  for (int lab : labels) {
    for (int det : detections.bins) {
      if (std::abs(det - lab) <= tol_bins) {
        ++mc.n_detected;
        break;
      }
    }
  }
  for (int det : detections.bins) {
    bool near_label = false;
    for (int lab : labels) {
      if (std::abs(det - lab) <= tol_bins) {
        near_label = true;
        break;
      }
    }
    if (!near_label) ++mc.n_false;
  }
  return mc;
}

Aggregate aggregate(const std::vector<MatchCounts>& counts) {
  if (counts.empty()) throw std::invalid_argument("aggregate needs at least one frame");
  Aggregate a;
  int labeled_frames = 0;
  for (const auto& mc : counts) {
    if (mc.n_bins < 1) throw std::invalid_argument("aggregate needs positive profile lengths");
    if (mc.n_labels > 0) {
      a.p_d += static_cast<double>(mc.n_detected) / mc.n_labels;
      ++labeled_frames;
    }
    a.p_fa += static_cast<double>(mc.n_false) / mc.n_bins;
  }
  a.p_d = labeled_frames > 0 ? a.p_d / labeled_frames : 0.0;
  a.p_fa /= static_cast<double>(counts.size());
  return a;
}

namespace {

std::string non_threshold_params(const DetectorSpec& spec) {
  std::ostringstream os;
  switch (spec.kind) {
    case DetectorKind::Proposed:
    case DetectorKind::AblGram:
    case DetectorKind::AblL2:
      os << "d=" << spec.dim;
      break;
    case DetectorKind::Os:
      os << "k=" << spec.k_frac;
      break;
    case DetectorKind::Or:
    case DetectorKind::Tsln:
      os << "gamma=" << spec.gamma;
      break;
    case DetectorKind::Cha:
      os << "m=" << spec.m_frac;
      break;
    default:
      break;
  }
  return os.str();
}

Aggregate evaluate_at(const Dataset& ds, const DetectorSpec& spec, const WindowConfig& window,
                      int tol_bins) {
  std::vector<MatchCounts> counts;
  counts.reserve(ds.profiles.size());
  for (size_t f = 0; f < ds.profiles.size(); ++f) {
    const auto det = detect(ds.profiles[f], window, spec);
    counts.push_back(match_detections(det, ds.labels[f], ds.profiles[f].size(), tol_bins));
  }
  return aggregate(counts);
}

}  // namespace

RocCurve roc_sweep(const Dataset& ds, const DetectorSpec& spec,
                   const std::vector<double>& thresholds, const WindowConfig& window,
                   int tol_bins) {
  if (ds.profiles.empty()) throw std::invalid_argument("roc_sweep needs a non-empty dataset");
  if (thresholds.empty()) throw std::invalid_argument("roc_sweep needs at least one threshold");

  RocCurve curve;
  curve.detector = detector_id(spec.kind);
  curve.window = window;
  curve.params = non_threshold_params(spec);
  for (double thr : thresholds) {
    const auto at = with_threshold(spec, thr);
    const auto agg = evaluate_at(ds, at, window, tol_bins);
    curve.points.push_back({sweep_threshold(at), agg.p_fa, agg.p_d});
  }
  std::sort(curve.points.begin(), curve.points.end(),
            [](const RocPoint& a, const RocPoint& b) { return a.threshold < b.threshold; });
  return curve;
}

double pd_at_pfa(const RocCurve& curve, double pfa) {
  if (curve.points.empty()) return 0.0;

  // Upper envelope in (p_fa, p_d), p_fa ascending.
  std::vector<std::pair<double, double>> pts;
  pts.reserve(curve.points.size());
  for (const auto& p : curve.points) pts.emplace_back(p.p_fa, p.p_d);
  std::sort(pts.begin(), pts.end());
  double running = 0.0;
  for (auto& p : pts) {
    running = std::max(running, p.second);
    p.second = running;
  }

  if (pfa < pts.front().first) return 0.0;  // below the reachable region
  if (pfa >= pts.back().first) return pts.back().second;
  for (size_t i = 1; i < pts.size(); ++i) {
    if (pfa <= pts[i].first) {
      const auto& [x0, y0] = pts[i - 1];
      const auto& [x1, y1] = pts[i];
      if (x1 == x0) return std::max(y0, y1);
      const double u = (pfa - x0) / (x1 - x0);
      return y0 + u * (y1 - y0);
    }
  }
  return pts.back().second;
}

double avg_gain(const RocCurve& ours, const RocCurve& baseline, double pfa_max) {
  if (!(pfa_max > 0.0 && pfa_max <= 0.1))
    throw std::invalid_argument("pfa_max must lie in (0, 0.1]");
  const auto grid = threshold_grid(1e-4, pfa_max, 20, true);
  double total = 0.0;
  for (double g : grid) total += (pd_at_pfa(ours, g) - pd_at_pfa(baseline, g)) * 100.0;
  return total / static_cast<double>(grid.size());
}

std::vector<ReachablePoint> min_pfa_study(const Dataset& ds, const std::vector<int>& dims,
                                          const WindowConfig& window, int tol_bins) {
  if (dims.empty()) throw std::invalid_argument("min_pfa_study needs at least one dim");
  // Thresholding just below the score bound keeps only cells whose slot holds
  // exactly zero centroid mass — the limit of the curve as T2 -> 1.
  const double near_one = std::nextafter(1.0, 0.0);
  std::vector<ReachablePoint> out;
  for (int d : dims) {
    DetectorSpec spec;
    spec.kind = DetectorKind::Proposed;
    spec.dim = d;
    ReachablePoint rp;
    rp.dim = d;
    rp.min_pfa = evaluate_at(ds, with_threshold(spec, near_one), window, tol_bins).p_fa;
    rp.max_pd = evaluate_at(ds, with_threshold(spec, 0.0), window, tol_bins).p_d;
    out.push_back(rp);
  }
  return out;
}

std::vector<double> threshold_grid(double first, double last, int count, bool geometric) {
  if (count < 1) throw std::invalid_argument("grid count must be >= 1");
  if (geometric && !(first > 0.0 && last > 0.0))
    throw std::invalid_argument("geometric grids need positive endpoints");
  std::vector<double> g;
  g.reserve(count);
  if (count == 1) {
    g.push_back(first);
    return g;
  }
  for (int i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / (count - 1);
    g.push_back(geometric ? first * std::pow(last / first, u) : first + u * (last - first));
  }
  return g;
}

BenchResult run_bench(const Dataset& ds, const DetectorSpec& spec, const WindowConfig& window,
                      int passes) {
  if (ds.profiles.empty()) throw std::invalid_argument("run_bench needs a non-empty dataset");
  if (passes < 1) throw std::invalid_argument("passes must be >= 1");

  BenchResult br;
  br.detector = detector_id(spec.kind);
  br.n_profiles = static_cast<int>(ds.profiles.size());
  br.n_passes = passes;

  for (const auto& p : ds.profiles) (void)detect(p, window, spec);  // warm-up

  std::vector<double> per_profile;
  per_profile.reserve(passes);
  for (int r = 0; r < passes; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& p : ds.profiles) (void)detect(p, window, spec);
    const auto t1 = std::chrono::steady_clock::now();
    per_profile.push_back(std::chrono::duration<double>(t1 - t0).count() / br.n_profiles);
  }
  std::sort(per_profile.begin(), per_profile.end());
  const size_t mid = per_profile.size() / 2;
  br.median_profile_seconds = per_profile.size() % 2 == 1
                                  ? per_profile[mid]
                                  : 0.5 * (per_profile[mid - 1] + per_profile[mid]);

  for (const auto& p : ds.profiles) (void)detect_counted(p, window, spec, br.ops);
  return br;
}

}  // namespace radet
