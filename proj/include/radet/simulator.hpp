#pragma once

/**
 * @file simulator.hpp
 * @brief Synthetic FMCW intermediate-frequency sample and range-profile
 *        generator with scripted scenarios for detector evaluation.
 *
 * One frame models a single chirp: each point target at distance d adds a
 * complex tone at the beat frequency 2*slope*d/c with a deterministic phase,
 * plus circular complex Gaussian receiver noise. The range transform applies
 * a Hann window and a DFT; demodulation puts beat tones on negative
 * frequencies, so the transform uses the e^{+j2*pi*k*n/L} kernel and bin k
 * maps directly to range k * bin_width. Clutter models act additively on the
 * magnitude profile after the transform.
 */

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "radet/types.hpp"

namespace radet {

/// Propagation speed used throughout, exactly.
inline constexpr double kSpeedOfLight = 3.0e8;

/// Chirp and sampling parameters. Defaults model a 77 GHz indoor sensor:
/// 256 samples at 160 ns within an 80 us chirp, slope 50 MHz/us, 128 chirps
/// per frame, giving ~7.32 cm bins and ~18.75 m unambiguous range.
struct RadarConfig {
  int n_samples = 256;
  double sample_period_s = 160e-9;
  int n_chirps = 128;
  double chirp_period_s = 80e-6;
  double slope_hz_per_s = 50e6 / 1e-6;
  double carrier_hz = 77e9;
};

void validate(const RadarConfig& rc);

/// Unambiguous range c / (2 * slope * sample_period) for complex sampling.
double max_range_m(const RadarConfig& rc);

/// Range resolution c / (2 * slope * n_samples * sample_period).
double range_bin_width_m(const RadarConfig& rc);

struct TargetSpec {
  double range_m = 0.0;     ///< in (0, max_range)
  double amplitude = 1.0;   ///< > 0
  double phase_rad = 0.0;   ///< extra constant phase
};

enum class ClutterModel {
  None,
  Exponential,  ///< i.i.d. exponential magnitudes, one mean everywhere
  Weibull,      ///< i.i.d. Weibull magnitudes (shape, scale)
  Edge          ///< exponential with a mean step at a given bin
};

struct ClutterSpec {
  ClutterModel model = ClutterModel::None;
  double mean = 0.0;        ///< Exponential
  double shape = 0.0;       ///< Weibull
  double scale = 0.0;       ///< Weibull
  int step_bin = 0;         ///< Edge: first bin of the high region
  double low_mean = 0.0;    ///< Edge: mean below step_bin
  double high_mean = 0.0;   ///< Edge: mean at and above step_bin
};

/// Everything that determines one frame, including the noise seed.
struct SceneSpec {
  std::vector<TargetSpec> targets;
  double noise_sigma = 0.0;  ///< complex noise std per sample, >= 0
  ClutterSpec clutter;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument when a target is out of the unambiguous
/// range, an amplitude is non-positive, or the clutter spec is malformed.
void validate_scene(const SceneSpec& scene, const RadarConfig& rc);

/// Complex intermediate-frequency samples for one chirp, deterministic in
/// scene.seed.
Eigen::ArrayXcd synth_if_samples(const SceneSpec& scene, const RadarConfig& rc);

/// Hann window + range transform; magnitudes of all n_samples bins.
RangeProfile range_profile(const Eigen::ArrayXcd& samples, const RadarConfig& rc);

/// Adds magnitude-domain clutter draws in place, deterministic in seed.
void add_clutter(RangeProfile& profile, const ClutterSpec& clutter, std::uint64_t seed);

/// Ground-truth bins: round(range / bin_width) per target, clamped to the
/// profile, sorted and deduplicated.
LabelSet label_bins(const SceneSpec& scene, const RadarConfig& rc);

// ---------------------------------------------------------------- scenarios

enum class Scenario {
  DenseIndoor,       ///< 6-14 targets, close pairs, 30 dB spread, Weibull clutter
  TwoWalkers,        ///< two moderate targets in an empty room
  HomogeneousNoise,  ///< receiver noise only
  ClutterEdge        ///< step clutter wall plus a target on each side
};

std::string scenario_id(Scenario s);
Scenario parse_scenario(const std::string& text);

struct Dataset {
  Scenario scenario = Scenario::HomogeneousNoise;
  std::uint64_t seed = 0;
  RadarConfig radar;
  std::vector<RangeProfile> profiles;
  std::vector<LabelSet> labels;  ///< parallel to profiles

  int n_frames() const { return static_cast<int>(profiles.size()); }
};

/// Scripted frame generator, bit-reproducible per (scenario, n_frames, seed).
Dataset make_dataset(Scenario scenario, int n_frames, std::uint64_t seed,
                     const RadarConfig& rc = RadarConfig{});

}  // namespace radet
