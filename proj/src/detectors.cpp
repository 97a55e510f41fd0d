#include "radet/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "radet/window.hpp"

namespace radet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Additive guard for log-amplitudes: smallest positive normal float, so it
// only perturbs cells that are exactly zero.
constexpr double kLogGuard = 1.1754943508222875e-38;

/// Shared CUT loop: runs `kernel(view, score) -> detected` over every
/// evaluable cell under test and collects the firing bins.
template <class Kernel>
DetectionSet drive(const RangeProfile& profile, const WindowConfig& cfg, Kernel&& kernel) {
  validate(profile);
  validate(cfg);
  DetectionSet out;
  out.frame_id = profile.frame_id;
  const int L = profile.size();
  for (int c = 0; c < L; ++c) {
    const auto v = window_view(profile, c, cfg);
    if (!v) continue;
    double score = 0.0;
    if (kernel(*v, score)) {
      out.bins.push_back(c);
      out.scores.push_back(score);
    }
  }
  return out;
}

template <class Fn>
void for_each_cell(const WindowView& v, Fn&& fn) {
  for (int i = 0; i < v.n_left; ++i) fn(v.left[i]);
  for (int i = 0; i < v.n_right; ++i) fn(v.right[i]);
}

// ------------------------------------------------------------------ proposed

// One pass for the window maximum, one pass scattering the Taylor weights
// (1 - z/max) into the slot histogram. No ordering primitive anywhere.
template <class T>
DetectionSet proposed_impl(const RangeProfile& profile, const WindowConfig& cfg,
                           const ProposedParams& params, T& tally) {
  validate(params);
  Eigen::ArrayXd slotmass(params.dim);
  return drive(profile, cfg, [&](const WindowView& v, double& score) {
    double maxv = v.cut;
    for_each_cell(v, [&](double z) {
      tally.cmp();
      if (z > maxv) maxv = z;
    });
    tally.cmp();
    if (maxv <= 0.0) return false;  // all-zero window: no detection
    tally.cmp();
    if (v.cut <= 0.0) return false;  // zero CUT has no slot: no detection

    slotmass.setZero();
    double gamma = 0.0;
    for_each_cell(v, [&](double z) {
      const double xi = z / maxv;
      const double w = 1.0 - xi;
      gamma += w;
      tally.mac(3);
      if (xi > 0.0) {
        slotmass[phi_encode(xi, params.dim)] += w;
        tally.mac(2);  // reciprocal + accumulate
      }
    });
    const double cut_norm = v.cut / maxv;
    const int s = phi_encode(cut_norm, params.dim);
    tally.mac(2);
    if (gamma > 0.0) {
      score = 1.0 - slotmass[s] / gamma;
    } else {
      // Every training cell sits at the maximum: equal weights reduce the
      // centroid to per-slot counts.
      slotmass.setZero();
      for_each_cell(v, [&](double z) { slotmass[phi_encode(z / maxv, params.dim)] += 1.0; });
      score = 1.0 - slotmass[s] / static_cast<double>(v.n_train());
    }
    tally.mac(2);
    tally.cmp();
    return score > params.threshold;
  });
}

// ---------------------------------------------------------------- ablations

template <class T>
DetectionSet gram_impl(const RangeProfile& profile, const WindowConfig& cfg,
                       const ProposedParams& params, T& tally) {
  validate(params);
  Eigen::ArrayXd counts(params.dim);
  return drive(profile, cfg, [&](const WindowView& v, double& score) {
    double maxv = v.cut;
    for_each_cell(v, [&](double z) {
      tally.cmp();
      if (z > maxv) maxv = z;
    });
    if (maxv <= 0.0 || v.cut <= 0.0) return false;
    counts.setZero();
    for_each_cell(v, [&](double z) {
      const double xi = z / maxv;
      tally.mac(2);
      if (xi > 0.0) counts[phi_encode(xi, params.dim)] += 1.0;
    });
    const double corr = counts[phi_encode(v.cut / maxv, params.dim)];
    tally.mac();
    score = -corr;
    tally.cmp();
    return corr < params.threshold;
  });
}

template <class T>
DetectionSet l2_impl(const RangeProfile& profile, const WindowConfig& cfg,
                     const ProposedParams& params, T& tally) {
  validate(params);
  Eigen::ArrayXd slotmass(params.dim);
  return drive(profile, cfg, [&](const WindowView& v, double& score) {
    double maxv = v.cut;
    for_each_cell(v, [&](double z) {
      tally.cmp();
      if (z > maxv) maxv = z;
    });
    if (maxv <= 0.0 || v.cut <= 0.0) return false;
    slotmass.setZero();
    double gamma = 0.0;
    for_each_cell(v, [&](double z) {
      const double xi = z / maxv;
      const double w = 1.0 - xi;
      gamma += w;
      tally.mac(3);
      if (xi > 0.0) {
        slotmass[phi_encode(xi, params.dim)] += w;
        tally.mac(2);
      }
    });
    const double denom = gamma > 0.0 ? gamma : static_cast<double>(v.n_train());
    if (gamma <= 0.0) {
      slotmass.setZero();
      for_each_cell(v, [&](double z) { slotmass[phi_encode(z / maxv, params.dim)] += 1.0; });
    }
    const int s = phi_encode(v.cut / maxv, params.dim);
    double norm2 = 0.0;
    for (int i = 0; i < params.dim; ++i) {
      const double ci = slotmass[i] / denom;
      const double d = i == s ? 1.0 - ci : ci;
      norm2 += d * d;
      tally.mac(3);
    }
    score = std::sqrt(norm2);
    tally.mac();
    tally.cmp();
    return score > params.threshold;
  });
}

// ----------------------------------------------------------- CFAR baselines

double ratio_score(double cut, double estimate) {
  if (estimate > 0.0) return cut / estimate;
  return cut > 0.0 ? kInf : 0.0;
}

template <class T>
DetectionSet ca_impl(const RangeProfile& profile, const WindowConfig& cfg, CaVariant variant,
                     double alpha, T& tally) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  return drive(profile, cfg, [&](const WindowView& v, double& score) {
    double sl = 0.0, sr = 0.0;
    for (int i = 0; i < v.n_left; ++i) sl += v.left[i];
    for (int i = 0; i < v.n_right; ++i) sr += v.right[i];
    tally.mac(static_cast<unsigned long long>(v.n_train()));
    double est = 0.0;
    if (variant == CaVariant::Ca) {
      est = (sl + sr) / v.n_train();
    } else if (v.n_left == 0) {
      est = sr / v.n_right;  // a side emptied by shrinking: use the other
    } else if (v.n_right == 0) {
      est = sl / v.n_left;
    } else {
      const double ml = sl / v.n_left;
      const double mr = sr / v.n_right;
      tally.cmp();
      est = variant == CaVariant::Go ? std::max(ml, mr) : std::min(ml, mr);
    }
    tally.mac(2);
    score = ratio_score(v.cut, est);
    tally.cmp();
    return v.cut > alpha * est;
  });
}

template <class T>
DetectionSet os_impl(const RangeProfile& profile, const WindowConfig& cfg, double k_frac,
                     double alpha, T& tally) {
  if (!(k_frac > 0.0 && k_frac <= 1.0)) throw std::invalid_argument("k_frac must be in (0, 1]");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  std::vector<double> z;
  return drive(profile, cfg, [&](const WindowView& v, double& score) {
    z.clear();
    for_each_cell(v, [&](double x) { z.push_back(x); });
    std::sort(z.begin(), z.end(), [&](double a, double b) {
      tally.sort();
      return a < b;
    });
    const int n = static_cast<int>(z.size());
    const int k = std::clamp(static_cast<int>(std::round(k_frac * n)), 1, n);
    const double beta2 = z[k - 1];
    tally.mac(2);
    score = ratio_score(v.cut, beta2);
    tally.cmp();
    return v.cut > alpha * beta2;
  });
}

struct TruncatedStats {
  double mu = 0.0;
  double sigma = 0.0;
};

// Truncation-corrected mean/σ of the values produced by `fn` over the window
// cells. All divisors are population (n); the correction constants make the
// estimates consistent for Gaussian data when the top gamma-tail is removed.
template <class T, class Map>
TruncatedStats truncated_stats(const WindowView& v, const OrConstants& oc, double gamma_depth,
                               Map&& map, T& tally) {
  const int n = v.n_train();
  double s1 = 0.0, s2 = 0.0;
  for_each_cell(v, [&](double z) {
    const double x = map(z);
    s1 += x;
    s2 += x * x;
    tally.mac(3);
  });
  const double mu = s1 / n;
  const double var = std::max(0.0, s2 / n - mu * mu);
  const double sigma = std::sqrt(var);
  tally.mac(5);

  const double cutline = mu + gamma_depth * sigma;
  double t1 = 0.0, t2 = 0.0;
  int kept = 0;
  for_each_cell(v, [&](double z) {
    const double x = map(z);
    tally.cmp();
    if (x <= cutline) {
      t1 += x;
      t2 += x * x;
      ++kept;
      tally.mac(3);
    }
  });
  tally.mac(2);
  if (kept < 2) return {mu, sigma};  // too few survivors: untruncated fall-back

  const double mt = t1 / kept;
  const double vart = std::max(0.0, t2 / kept - mt * mt);
  const double sig = std::sqrt(oc.chi * vart);
  tally.mac(6);
  return {mt + oc.alpha * sig, sig};
}

double deviation_score(double value, const TruncatedStats& st) {
  if (st.sigma > 0.0) return (value - st.mu) / st.sigma;
  return value > st.mu ? kInf : -kInf;
}

template <class T>
DetectionSet or_impl(const RangeProfile& profile, const WindowConfig& cfg, double gamma, double t,
                     T& tally) {
  const OrConstants oc = or_constants(gamma);
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
  return drive(profile, cfg, [&](const WindowView& v, double& score) {
    const auto st = truncated_stats(v, oc, gamma, [](double z) { return z; }, tally);
    score = deviation_score(v.cut, st);
    tally.mac(2);
    tally.cmp();
    return v.cut > st.mu + t * st.sigma;
  });
}

template <class T>
DetectionSet tsln_impl(const RangeProfile& profile, const WindowConfig& cfg, double gamma,
                       double t, T& tally) {
  const OrConstants oc = or_constants(gamma);
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
  return drive(profile, cfg, [&](const WindowView& v, double& score) {
    const auto st =
        truncated_stats(v, oc, gamma, [](double z) { return std::log(z + kLogGuard); }, tally);
    const double lcut = std::log(v.cut + kLogGuard);
    score = deviation_score(lcut, st);
    tally.mac(3);
    tally.cmp();
    return lcut > st.mu + t * st.sigma;
  });
}

template <class T>
DetectionSet cha_impl(const RangeProfile& profile, const WindowConfig& cfg, double m_frac,
                      double t, T& tally) {
  if (!(m_frac >= 0.0 && m_frac < 1.0)) throw std::invalid_argument("m_frac must be in [0, 1)");
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  std::vector<double> z;
  return drive(profile, cfg, [&](const WindowView& v, double& score) {
    z.clear();
    for_each_cell(v, [&](double x) { z.push_back(x); });
    std::sort(z.begin(), z.end(), [&](double a, double b) {
      tally.sort();
      return a < b;
    });
    const int n = static_cast<int>(z.size());
    const int m = static_cast<int>(std::floor(m_frac * n));
    double recip = 0.0;
    for (int i = m; i < n; ++i) {
      recip += 1.0 / z[i];  // a zero survivor drives recip to +inf, omega to 0
      tally.mac(2);
    }
    const double omega = 1.0 / recip;
    tally.mac(2);
    score = ratio_score(v.cut, omega);
    tally.cmp();
    return v.cut > t * omega;
  });
}

template <class T>
DetectionSet dispatch(const RangeProfile& profile, const WindowConfig& cfg,
                      const DetectorSpec& spec, T& tally) {
  validate(spec);
  switch (spec.kind) {
    case DetectorKind::Proposed:
      return proposed_impl(profile, cfg, ProposedParams{spec.dim, spec.threshold}, tally);
    case DetectorKind::Ca:
      return ca_impl(profile, cfg, CaVariant::Ca, spec.threshold, tally);
    case DetectorKind::Go:
      return ca_impl(profile, cfg, CaVariant::Go, spec.threshold, tally);
    case DetectorKind::So:
      return ca_impl(profile, cfg, CaVariant::So, spec.threshold, tally);
    case DetectorKind::Os:
      return os_impl(profile, cfg, spec.k_frac, spec.threshold, tally);
    case DetectorKind::Or:
      return or_impl(profile, cfg, spec.gamma, spec.threshold, tally);
    case DetectorKind::Tsln:
      return tsln_impl(profile, cfg, spec.gamma, spec.threshold, tally);
    case DetectorKind::Cha:
      return cha_impl(profile, cfg, spec.m_frac, spec.threshold, tally);
    case DetectorKind::AblGram:
      return gram_impl(profile, cfg, ProposedParams{spec.dim, spec.threshold}, tally);
    case DetectorKind::AblL2:
      return l2_impl(profile, cfg, ProposedParams{spec.dim, spec.threshold}, tally);
  }
  throw std::logic_error("unreachable detector kind");
}

}  // namespace

DetectionSet detect_proposed(const RangeProfile& profile, const WindowConfig& cfg,
                             const ProposedParams& params) {
  NoTally t;
  return proposed_impl(profile, cfg, params, t);
}

DetectionSet detect_ablation_gram(const RangeProfile& profile, const WindowConfig& cfg,
                                  const ProposedParams& params) {
  NoTally t;
  return gram_impl(profile, cfg, params, t);
}

DetectionSet detect_ablation_l2(const RangeProfile& profile, const WindowConfig& cfg,
                                const ProposedParams& params) {
  NoTally t;
  return l2_impl(profile, cfg, params, t);
}

DetectionSet detect_ca_family(const RangeProfile& profile, const WindowConfig& cfg,
                              CaVariant variant, double alpha) {
  NoTally t;
  return ca_impl(profile, cfg, variant, alpha, t);
}

DetectionSet detect_os(const RangeProfile& profile, const WindowConfig& cfg, double k_frac,
                       double alpha) {
  NoTally t;
  return os_impl(profile, cfg, k_frac, alpha, t);
}

OrConstants or_constants(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  const double cdf = 0.5 * (1.0 + std::erf(gamma / std::sqrt(2.0)));
  OrConstants oc;
  oc.alpha = std::exp(-0.5 * gamma * gamma) / (std::sqrt(2.0 * M_PI) * cdf);
  oc.beta = 1.0 - gamma * oc.alpha;
  const double denom = oc.beta - oc.alpha * oc.alpha;
  if (!(denom > 0.0)) throw std::invalid_argument("degenerate truncation depth");
  oc.chi = 1.0 / denom;
  return oc;
}

DetectionSet detect_or(const RangeProfile& profile, const WindowConfig& cfg, double gamma,
                       double t) {
  NoTally tl;
  return or_impl(profile, cfg, gamma, t, tl);
}

DetectionSet detect_tsln(const RangeProfile& profile, const WindowConfig& cfg, double gamma,
                         double t) {
  NoTally tl;
  return tsln_impl(profile, cfg, gamma, t, tl);
}

DetectionSet detect_cha(const RangeProfile& profile, const WindowConfig& cfg, double m_frac,
                        double t) {
  NoTally tl;
  return cha_impl(profile, cfg, m_frac, t, tl);
}

void validate(const DetectorSpec& spec) {
  if (!std::isfinite(spec.threshold)) throw std::invalid_argument("threshold must be finite");
  switch (spec.kind) {
    case DetectorKind::Proposed:
    case DetectorKind::AblGram:
    case DetectorKind::AblL2:
      validate(ProposedParams{spec.dim, spec.threshold});
      break;
    case DetectorKind::Ca:
    case DetectorKind::Go:
    case DetectorKind::So:
      if (!(spec.threshold > 0.0)) throw std::invalid_argument("alpha must be positive");
      break;
    case DetectorKind::Os:
      if (!(spec.k_frac > 0.0 && spec.k_frac <= 1.0))
        throw std::invalid_argument("k_frac must be in (0, 1]");
      if (!(spec.threshold > 0.0)) throw std::invalid_argument("alpha must be positive");
      break;
    case DetectorKind::Or:
    case DetectorKind::Tsln:
      (void)or_constants(spec.gamma);
      break;
    case DetectorKind::Cha:
      if (!(spec.m_frac >= 0.0 && spec.m_frac < 1.0))
        throw std::invalid_argument("m_frac must be in [0, 1)");
      if (!(spec.threshold > 0.0)) throw std::invalid_argument("t must be positive");
      break;
  }
}

std::string detector_id(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::Proposed: return "proposed";
    case DetectorKind::Ca: return "ca";
    case DetectorKind::Go: return "go";
    case DetectorKind::So: return "so";
    case DetectorKind::Os: return "os";
    case DetectorKind::Or: return "or";
    case DetectorKind::Tsln: return "tsln";
    case DetectorKind::Cha: return "cha";
    case DetectorKind::AblGram: return "abl-gram";
    case DetectorKind::AblL2: return "abl-l2";
  }
  throw std::logic_error("unreachable detector kind");
}

DetectorSpec parse_detector_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);

  DetectorSpec spec;
  if (name == "proposed") {
    spec = {DetectorKind::Proposed, 0.95, 15, 0.7, 1.3, 0.65};
  } else if (name == "ca" || name == "go" || name == "so") {
    spec.kind = name == "ca" ? DetectorKind::Ca : name == "go" ? DetectorKind::Go : DetectorKind::So;
    spec.threshold = 5.0;
  } else if (name == "os") {
    spec.kind = DetectorKind::Os;
    spec.threshold = 6.0;
  } else if (name == "or") {
    spec.kind = DetectorKind::Or;
    spec.threshold = 4.0;
    spec.gamma = 1.3;
  } else if (name == "tsln") {
    spec.kind = DetectorKind::Tsln;
    spec.threshold = 4.0;
    spec.gamma = 1.8;
  } else if (name == "cha") {
    spec.kind = DetectorKind::Cha;
    spec.threshold = 6.0;
  } else if (name == "abl-gram") {
    spec.kind = DetectorKind::AblGram;
    spec.threshold = 1.0;
  } else if (name == "abl-l2") {
    spec.kind = DetectorKind::AblL2;
    spec.threshold = 0.95;
  } else {
    throw std::invalid_argument(
        "unknown detector '" + name +
        "'; accepted: proposed, ca, go, so, os, or, tsln, cha, abl-gram, abl-l2");
  }

  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("malformed detector option '" + item + "'");
      const std::string key = item.substr(0, eq);
      double value = 0.0;
      try {
        size_t pos = 0;
        value = std::stod(item.substr(eq + 1), &pos);
        if (pos != item.size() - eq - 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed detector option value in '" + item + "'");
      }
      if (key == "d") {
        spec.dim = static_cast<int>(value);
      } else if (key == "t2" || key == "t1" || key == "alpha" || key == "t") {
        spec.threshold = value;
      } else if (key == "k") {
        spec.k_frac = value;
      } else if (key == "gamma") {
        spec.gamma = value;
      } else if (key == "m") {
        spec.m_frac = value;
      } else {
        throw std::invalid_argument("unknown detector option '" + key +
                                    "'; accepted keys: d, t2, t1, alpha, t, k, gamma, m");
      }
    }
  }
  validate(spec);
  return spec;
}

DetectorSpec with_threshold(DetectorSpec spec, double threshold) {
  spec.threshold = threshold;
  return spec;
}

bool threshold_is_geometric(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::Proposed:
    case DetectorKind::AblGram:
    case DetectorKind::AblL2:
      return false;
    default:
      return true;
  }
}

double sweep_threshold(const DetectorSpec& spec) {
  return spec.kind == DetectorKind::AblGram ? -spec.threshold : spec.threshold;
}

DetectionSet detect(const RangeProfile& profile, const WindowConfig& cfg,
                    const DetectorSpec& spec) {
  NoTally t;
  return dispatch(profile, cfg, spec, t);
}

DetectionSet detect_counted(const RangeProfile& profile, const WindowConfig& cfg,
                            const DetectorSpec& spec, OpCounters& ops) {
  Tally t;
  const auto out = dispatch(profile, cfg, spec, t);
  ops += t.counts;
  return out;
}

}  // namespace radet
