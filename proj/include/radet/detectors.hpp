#pragma once

/**
 * @file detectors.hpp
 * @brief Range-profile target detectors: the one-hot projection detector,
 *        its two ablations, and six CFAR baselines.
 *
 * Every detector slides the same training/guard window over the profile
 * (see window.hpp) and makes an independent decision per cell under test.
 * All decisions reduce to `score > threshold` for a per-detector decision
 * statistic, so detection sets shrink monotonically as thresholds rise.
 */

#include <string>

#include "radet/onehot.hpp"
#include "radet/opcount.hpp"
#include "radet/types.hpp"

namespace radet {

// ------------------------------------------------------------------ proposed

/// One-hot projection detector. Per evaluable cell under test: normalise the
/// window by its joint maximum, build the weighted one-hot background
/// centroid of the training cells, and fire when the centroid holds little
/// mass at the CUT's own slot (score = 1 - centroid[slot] > T2).
/// Sort-free; cost O(L * (n_train + dim)).
DetectionSet detect_proposed(const RangeProfile& profile, const WindowConfig& cfg,
                             const ProposedParams& params);

// ---------------------------------------------------------------- ablations

/// Unweighted Gram-correlation ablation: the background summary is the plain
/// sum of training one-hot vectors (per-slot cell counts) and a CUT fires
/// when the count at its slot falls below T1 (params.threshold). Reported
/// score is the negated count, so score > -T1 is the firing condition.
DetectionSet detect_ablation_gram(const RangeProfile& profile, const WindowConfig& cfg,
                                  const ProposedParams& params);

/// Euclidean-distance ablation: fires when the L2 distance between the CUT's
/// one-hot vector and the weighted centroid exceeds T2 (params.threshold).
DetectionSet detect_ablation_l2(const RangeProfile& profile, const WindowConfig& cfg,
                                const ProposedParams& params);

// ----------------------------------------------------------- CFAR baselines

enum class CaVariant {
  Ca,  ///< cell averaging over both sides pooled
  Go,  ///< greatest-of the per-side means
  So   ///< smallest-of the per-side means
};

/// Mean-based CFAR: fires when the CUT exceeds alpha times the noise-level
/// estimate (pooled, greatest-of or smallest-of mean). A side emptied by
/// window shrinking falls back to the other side. A zero estimate (all-zero
/// training cells) degenerates to "any positive CUT fires".
DetectionSet detect_ca_family(const RangeProfile& profile, const WindowConfig& cfg,
                              CaVariant variant, double alpha);

/// Order-statistic CFAR: sorts the pooled training cells ascending and takes
/// the k-th order statistic as the noise-level estimate, with
/// k = clamp(round(k_frac * n), 1, n) (1-indexed, round half away from zero).
/// Fires when the CUT exceeds alpha times the estimate.
DetectionSet detect_os(const RangeProfile& profile, const WindowConfig& cfg, double k_frac,
                       double alpha);

/// Constants for the outlier-removal correction at truncation depth gamma:
/// alpha = exp(-gamma^2/2) / (sqrt(2*pi) * Phi(gamma)) with Phi the standard
/// normal CDF, beta = 1 - gamma * alpha, chi = 1 / (beta - alpha^2). These
/// make the truncated-sample moment estimates consistent for Gaussian data:
/// sigma = sqrt(chi * var_truncated), mu = mean_truncated + alpha * sigma.
struct OrConstants {
  double alpha = 0.0;
  double beta = 0.0;
  double chi = 0.0;
};

/// Throws std::invalid_argument unless gamma > 0 and beta - alpha^2 > 0.
OrConstants or_constants(double gamma);

/// Outlier-removal CFAR: computes mean/σ of the training cells (population
/// divisor), discards cells more than gamma*σ above the mean, re-estimates
/// mean and σ from the survivors with the truncation correction, and fires
/// when the CUT exceeds mu + t*σ. Fewer than 2 survivors fall back to the
/// untruncated estimates.
DetectionSet detect_or(const RangeProfile& profile, const WindowConfig& cfg, double gamma,
                       double t);

/// Two-step log-normal CFAR: the outlier-removal pipeline applied to
/// log-amplitudes ln(z + eps), firing when ln(CUT + eps) exceeds
/// mu_ln + t*σ_ln. The additive guard eps is the smallest positive normal
/// single-precision value, so it only matters for exactly-zero cells.
DetectionSet detect_tsln(const RangeProfile& profile, const WindowConfig& cfg, double gamma,
                         double t);

/// Censored harmonic-mean CFAR: sorts the pooled training cells ascending,
/// discards the m = floor(m_frac * n) smallest, and uses the harmonic mean
/// of the survivors' reciprocal sum, omega = 1 / sum(1/z_i), as the noise
/// level. Fires when the CUT exceeds t * omega. A zero survivor drives
/// omega to 0, degenerating to "any positive CUT fires".
DetectionSet detect_cha(const RangeProfile& profile, const WindowConfig& cfg, double m_frac,
                        double t);

// ------------------------------------------------------------ uniform front

enum class DetectorKind { Proposed, Ca, Go, So, Os, Or, Tsln, Cha, AblGram, AblL2 };

/// Algorithm selector plus every parameter any algorithm needs. `threshold`
/// is the detector's natural decision threshold: T2 for the one-hot detector
/// and the L2 ablation, alpha for CA/GO/SO/OS, t for OR/TS-LN/CHA, and T1
/// for the Gram ablation.
struct DetectorSpec {
  DetectorKind kind = DetectorKind::Proposed;
  double threshold = 0.95;
  int dim = 15;          ///< one-hot slots (proposed and ablations)
  double k_frac = 0.7;   ///< order-statistic rank fraction (os)
  double gamma = 1.3;    ///< truncation depth (or, tsln)
  double m_frac = 0.65;  ///< censoring fraction (cha)
};

void validate(const DetectorSpec& spec);

/// Stable identifier: proposed, ca, go, so, os, or, tsln, cha, abl-gram, abl-l2.
std::string detector_id(DetectorKind kind);

/// Parses "name" or "name:key=value,key=value". Keys: d (dim), t2/t1/alpha/t
/// (threshold), k (k_frac), gamma, m (m_frac). Unknown names or keys throw
/// std::invalid_argument.
DetectorSpec parse_detector_spec(const std::string& text);

/// Copy of `spec` with its natural threshold replaced.
DetectorSpec with_threshold(DetectorSpec spec, double threshold);

/// Whether threshold grids for this detector are naturally multiplicative
/// (geometric spacing: alpha and t factors) rather than additive (T2, T1).
bool threshold_is_geometric(DetectorKind kind);

/// Threshold in the universal score-convention: detection fires iff the
/// decision statistic exceeds this value. Equal to spec.threshold except for
/// the Gram ablation, whose natural T1 bounds the statistic from above
/// (score = -count), giving -T1 here. ROC files record this value so curves
/// stay monotone in the recorded threshold for every detector.
double sweep_threshold(const DetectorSpec& spec);

/// Runs the selected detector.
DetectionSet detect(const RangeProfile& profile, const WindowConfig& cfg,
                    const DetectorSpec& spec);

/// Runs the selected detector while tallying operation classes into `ops`
/// (added to, not reset). Detections are identical to detect().
DetectionSet detect_counted(const RangeProfile& profile, const WindowConfig& cfg,
                            const DetectorSpec& spec, OpCounters& ops);

}  // namespace radet
