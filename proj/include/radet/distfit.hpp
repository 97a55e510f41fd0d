#pragma once

/**
 * @file distfit.hpp
 * @brief Maximum-likelihood fitting of amplitude/noise samples to a small set
 *        of candidate distribution families, plus a Kolmogorov–Smirnov
 *        goodness-of-fit distance.
 *
 * Supported families and their parameters (p1, p2):
 *   - gaussian:    mean, standard deviation
 *   - lognormal:   mean and standard deviation of ln(x)
 *   - exponential: rate lambda (p2 unused, set to 0)
 *   - gamma:       shape k, scale theta
 *   - weibull:     shape k, scale lambda
 *
 * Gaussian and lognormal use population-style divisors (1/n). Gamma and
 * Weibull shapes are solved by Newton iteration on their profile-likelihood
 * equations; non-convergence raises std::runtime_error naming the family.
 */

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace radet {

enum class DistFamily { Gaussian, Lognormal, Exponential, Gamma, Weibull };

/// Stable identifier used in CLI arguments and report files.
std::string dist_family_id(DistFamily f);

/// Inverse of dist_family_id; throws std::invalid_argument on unknown names.
DistFamily parse_dist_family(const std::string& id);

struct FitResult {
  DistFamily family = DistFamily::Gaussian;
  double p1 = 0.0;      ///< first parameter (see file comment)
  double p2 = 0.0;      ///< second parameter (0 when the family has only one)
  double ks = 0.0;      ///< Kolmogorov–Smirnov distance of the fit
  int iterations = 0;   ///< Newton iterations used (0 for closed-form fits)
};

/// Maximum-likelihood fit of one family to strictly positive samples
/// (gaussian also accepts non-positive values). Throws std::invalid_argument
/// on empty/invalid input, std::runtime_error if iteration fails to converge.
FitResult fit_family(const Eigen::ArrayXd& samples, DistFamily family);

/// Fits every family in `families` and returns results sorted by ascending
/// KS distance (best fit first).
std::vector<FitResult> fit_all(const Eigen::ArrayXd& samples,
                               const std::vector<DistFamily>& families);

/// CDF of a fitted model evaluated at x.
double fit_cdf(const FitResult& fit, double x);

/// Exact Kolmogorov–Smirnov distance between the empirical distribution of
/// `samples` and a continuous CDF: max over sorted samples of
/// max((i+1)/n - F(x_i), F(x_i) - i/n).
double ks_distance(const Eigen::ArrayXd& samples,
                   const std::function<double(double)>& cdf);

}  // namespace radet
