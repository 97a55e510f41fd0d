#pragma once

/**
 * @file types.hpp
 * @brief Core value types shared by the detectors, simulator and evaluation
 *        harness: range profiles, ground-truth labels, sliding-window
 *        geometry and detection results.
 */

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace radet {

/// How a sliding window behaves when it would extend past the profile edge.
enum class Boundary {
  Shrink,  ///< drop out-of-range cells, keep the cell-under-test evaluable
  Skip     ///< mark edge cells as not evaluable
};

/// One frame of range-binned magnitudes (post range-transform).
struct RangeProfile {
  Eigen::ArrayXd magnitudes;  ///< non-negative, length L >= 1
  double bin_width_m = 0.0;   ///< metres per range bin, > 0
  int frame_id = 0;

  int size() const { return static_cast<int>(magnitudes.size()); }
};

/// Throws std::invalid_argument unless the profile satisfies its invariants.
inline void validate(const RangeProfile& p) {
  if (p.magnitudes.size() < 1) throw std::invalid_argument("range profile must have at least one bin");
  if (!(p.bin_width_m > 0.0)) throw std::invalid_argument("range profile bin width must be positive");
  for (Eigen::Index i = 0; i < p.magnitudes.size(); ++i) {
    const double v = p.magnitudes[i];
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("range profile magnitudes must be finite and non-negative");
  }
}

/// Ground-truth target bins for one frame, sorted ascending, unique.
using LabelSet = std::vector<int>;

/// Sliding-window geometry. Cell counts are totals split evenly per side.
struct WindowConfig {
  int n_train = 20;                      ///< total training cells, even, >= 2
  int n_guard = 10;                      ///< total guard cells, even, >= 0
  Boundary boundary = Boundary::Shrink;  ///< edge handling
};

inline void validate(const WindowConfig& cfg) {
  if (cfg.n_train < 2 || cfg.n_train % 2 != 0)
    throw std::invalid_argument("n_train must be even and >= 2");
  if (cfg.n_guard < 0 || cfg.n_guard % 2 != 0)
    throw std::invalid_argument("n_guard must be even and >= 0");
}

/// A materialised window around one cell under test. Training cells are
/// stored in ascending bin order on each side; either side may be shorter
/// than n_train/2 (or empty) when the window was shrunk at a profile edge.
struct Window {
  double cut = 0.0;            ///< cell under test amplitude
  Eigen::ArrayXd train_left;   ///< training cells below the CUT
  Eigen::ArrayXd train_right;  ///< training cells above the CUT
  int cut_index = 0;

  int n_train() const { return static_cast<int>(train_left.size() + train_right.size()); }
};

/// A window rescaled by its joint maximum over {CUT} + training cells.
/// All entries lie in [0, 1]; `train_norm` is left side then right side in
/// ascending bin order. A window that is identically zero cannot be
/// normalised; it is returned as all zeros with `degenerate` set and is
/// treated as a no-detection downstream.
struct NormalizedWindow {
  double cut_norm = 0.0;
  Eigen::ArrayXd train_norm;
  bool degenerate = false;
};

/// Detections for one frame: bin indices (sorted, unique — at most one per
/// cell under test) with the decision statistic that fired each one.
struct DetectionSet {
  std::vector<int> bins;
  std::vector<double> scores;  ///< parallel to bins
  int frame_id = 0;

  int size() const { return static_cast<int>(bins.size()); }
};

}  // namespace radet
