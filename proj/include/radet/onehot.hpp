#pragma once

/**
 * @file onehot.hpp
 * @brief One-hot projection primitives for the low-complexity detector.
 *
 * Amplitudes normalised to (0, 1] are quantised onto D one-hot slots by a
 * reciprocal rule: slot(x) = max(0, D - floor(1/x)). The rule is monotone
 * non-decreasing in x, maps x = 1 to the top slot D-1, and clamps everything
 * below 1/D into slot 0, so resolution is finest near the window maximum.
 * The background is summarised by a weighted centroid of the training cells'
 * one-hot vectors, with weights (1 - x) that de-emphasise strong returns —
 * a first-order expansion of inverse-magnitude weighting. A cell under test
 * is declared a detection when the centroid holds little mass at the cell's
 * own slot: score = 1 - centroid[slot] > T2.
 */

#include <Eigen/Dense>

#include <stdexcept>

#include "radet/types.hpp"

namespace radet {

/// Parameters of the one-hot projection detector (shared by its ablations).
struct ProposedParams {
  int dim = 15;            ///< number of one-hot slots D, >= 1
  double threshold = 0.95; ///< decision threshold; useful range [0, 1) — at
                           ///< >= 1 the score bound makes detections impossible
};

inline void validate(const ProposedParams& p) {
  if (p.dim < 1) throw std::invalid_argument("one-hot dimension must be >= 1");
  if (!(p.threshold >= 0.0)) throw std::invalid_argument("threshold must be >= 0");
}

/// Slot index of a normalised amplitude, in [0, D-1].
/// Requires xi_norm in (0, 1]; a zero amplitude has no slot (callers encode
/// it as the all-zero vector per the degenerate-window rule).
inline int phi_encode(double xi_norm, int dim) {
  if (!(xi_norm > 0.0 && xi_norm <= 1.0)) throw std::invalid_argument("phi_encode needs xi_norm in (0, 1]");
  if (dim < 1) throw std::invalid_argument("phi_encode needs dim >= 1");
  const double r = std::floor(1.0 / xi_norm);
  // 1/xi >= 1 always, so the slot never exceeds dim - 1.
  const double s = static_cast<double>(dim) - r;
  return s > 0.0 ? static_cast<int>(s) : 0;
}

/// Weighted one-hot centroid of the training cells.
struct NoiseCentroid {
  Eigen::ArrayXd weights;  ///< length D, entries in [0, 1]
};

/// Builds the background centroid from normalised training cells.
///
/// Each cell j contributes weight w_j = 1 - train_norm[j] to its slot;
/// the result is the per-slot weight mass divided by the total mass Γ.
/// Entries sum to 1 whenever every cell has a slot (a convex combination of
/// one-hot vectors); a cell at exactly 0 contributes its weight to Γ but to
/// no slot (its encoding is the all-zero vector). When Γ = 0 — every cell
/// sits at the window maximum — the centroid falls back to uniform weights,
/// i.e. the per-slot cell counts over the number of cells.
inline NoiseCentroid noise_centroid(const Eigen::ArrayXd& train_norm, int dim) {
  if (dim < 1) throw std::invalid_argument("noise_centroid needs dim >= 1");
  const Eigen::Index n = train_norm.size();
  if (n < 1) throw std::invalid_argument("noise_centroid needs at least one training cell");

  NoiseCentroid out;
  out.weights = Eigen::ArrayXd::Zero(dim);
  double gamma = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double x = train_norm[j];
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("train_norm entries must lie in [0, 1]");
    const double w = 1.0 - x;
    gamma += w;
    if (x > 0.0) out.weights[phi_encode(x, dim)] += w;
  }
  if (gamma > 0.0) {
    out.weights /= gamma;
  } else {
    // All cells at the maximum: equal weights reduce to per-slot counts.
    for (Eigen::Index j = 0; j < n; ++j) out.weights[phi_encode(train_norm[j], dim)] += 1.0;
    out.weights /= static_cast<double>(n);
  }
  return out;
}

/// Decision for one cell under test against a background centroid.
/// Returns {detected, score} with score = 1 - centroid[slot(cut_norm)],
/// which lies in [0, 1]. A degenerate CUT (cut_norm = 0, all-zero window)
/// never detects and scores 0.
inline std::pair<bool, double> test_cut(double cut_norm, const NoiseCentroid& centroid,
                                        const ProposedParams& params) {
  validate(params);
  if (centroid.weights.size() != params.dim)
    throw std::invalid_argument("centroid dimension does not match params.dim");
  if (cut_norm == 0.0) return {false, 0.0};
  const int s = phi_encode(cut_norm, params.dim);
  const double score = 1.0 - centroid.weights[s];
  return {score > params.threshold, score};
}

}  // namespace radet
