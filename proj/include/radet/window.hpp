#pragma once

/**
 * @file window.hpp
 * @brief Sliding-window extraction and per-window normalisation.
 *
 * Geometry: for a cell under test at bin c with g = n_guard/2 guard cells and
 * t = n_train/2 training cells per side, the training spans are
 * [c-g-t, c-g-1] and [c+g+1, c+g+t]. Under Boundary::Shrink, cells falling
 * outside the profile are dropped and the CUT stays evaluable as long as at
 * least n_train/2 training cells survive in total; under Boundary::Skip any
 * out-of-range cell makes the CUT not evaluable.
 */

#include <algorithm>
#include <optional>

#include "radet/types.hpp"

namespace radet {

/// Non-owning view of a window: two contiguous runs of training cells inside
/// the profile. Detector kernels iterate these directly to avoid per-CUT
/// allocation; extract_window copies them into an owning Window.
struct WindowView {
  double cut = 0.0;
  int cut_index = 0;
  const double* left = nullptr;
  int n_left = 0;
  const double* right = nullptr;
  int n_right = 0;

  int n_train() const { return n_left + n_right; }
};

/// Resolves window geometry for one CUT. Returns std::nullopt when the CUT is
/// not evaluable under the boundary policy. Throws std::invalid_argument for
/// an out-of-range cut_index or invalid config.
inline std::optional<WindowView> window_view(const RangeProfile& profile, int cut_index,
                                             const WindowConfig& cfg) {
  validate(cfg);
  const int L = profile.size();
  if (cut_index < 0 || cut_index >= L) throw std::invalid_argument("cut_index out of range");

  const int g = cfg.n_guard / 2;
  const int t = cfg.n_train / 2;
  const int lo_begin = cut_index - g - t;
  const int lo_end = cut_index - g;          // exclusive
  const int hi_begin = cut_index + g + 1;
  const int hi_end = cut_index + g + 1 + t;  // exclusive

  if (cfg.boundary == Boundary::Skip) {
    if (lo_begin < 0 || hi_end > L) return std::nullopt;
  }
  const int a = std::max(lo_begin, 0);
  const int b = std::min(lo_end, L);
  const int c = std::max(hi_begin, 0);
  const int d = std::min(hi_end, L);

  WindowView w;
  w.cut = profile.magnitudes[cut_index];
  w.cut_index = cut_index;
  w.n_left = std::max(b - a, 0);
  w.n_right = std::max(d - c, 0);
  const double* base = profile.magnitudes.data();
  w.left = w.n_left > 0 ? base + a : nullptr;
  w.right = w.n_right > 0 ? base + c : nullptr;

  // Shrunk windows keep the CUT evaluable only while at least half the
  // nominal training support survives.
  if (w.n_train() < cfg.n_train / 2) return std::nullopt;
  return w;
}

/// Materialises the window around one CUT, or std::nullopt when the CUT is
/// not evaluable under the boundary policy.
inline std::optional<Window> extract_window(const RangeProfile& profile, int cut_index,
                                            const WindowConfig& cfg) {
  const auto v = window_view(profile, cut_index, cfg);
  if (!v) return std::nullopt;
  Window w;
  w.cut = v->cut;
  w.cut_index = cut_index;
  w.train_left = Eigen::Map<const Eigen::ArrayXd>(v->left, v->n_left);
  w.train_right = Eigen::Map<const Eigen::ArrayXd>(v->right, v->n_right);
  return w;
}

/// Rescales a window by its joint maximum over {CUT} + training cells so all
/// entries land in [0, 1]. An identically-zero window has no scale; it comes
/// back as all zeros with `degenerate` set.
inline NormalizedWindow normalize_window(const Window& w) {
  NormalizedWindow out;
  out.train_norm.resize(w.n_train());

  double maxv = w.cut;
  for (Eigen::Index i = 0; i < w.train_left.size(); ++i) maxv = std::max(maxv, w.train_left[i]);
  for (Eigen::Index i = 0; i < w.train_right.size(); ++i) maxv = std::max(maxv, w.train_right[i]);

  if (maxv <= 0.0) {
    out.cut_norm = 0.0;
    out.train_norm.setZero();
    out.degenerate = true;
    return out;
  }
  out.cut_norm = w.cut / maxv;
  Eigen::Index j = 0;
  for (Eigen::Index i = 0; i < w.train_left.size(); ++i) out.train_norm[j++] = w.train_left[i] / maxv;
  for (Eigen::Index i = 0; i < w.train_right.size(); ++i) out.train_norm[j++] = w.train_right[i] / maxv;
  return out;
}

/// First and one-past-last evaluable CUT index under Boundary::Skip.
inline std::pair<int, int> evaluable_range(int profile_len, const WindowConfig& cfg) {
  const int reach = cfg.n_guard / 2 + cfg.n_train / 2;
  const int lo = reach;
  const int hi = profile_len - reach;
  return {std::min(lo, profile_len), std::max(hi, 0)};
}

}  // namespace radet
