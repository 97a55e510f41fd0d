#include "radet/distfit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radet/numerics.hpp"

namespace radet {
namespace {

constexpr int kMaxNewtonIters = 100;
constexpr double kNewtonTol = 1e-10;

void require_samples(const Eigen::ArrayXd& x, bool positive, const char* family) {
  if (x.size() < 2) {
    throw std::invalid_argument(std::string("fit_family(") + family +
                                "): need at least 2 samples");
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw std::invalid_argument(std::string("fit_family(") + family +
                                  "): samples must be finite");
    }
    if (positive && !(x[i] > 0.0)) {
      throw std::invalid_argument(std::string("fit_family(") + family +
                                  "): samples must be strictly positive");
    }
  }
}

FitResult fit_gaussian(const Eigen::ArrayXd& x) {
  require_samples(x, false, "gaussian");
  FitResult r;
  r.family = DistFamily::Gaussian;
  r.p1 = x.mean();
  r.p2 = std::sqrt((x - r.p1).square().mean());
  return r;
}

FitResult fit_lognormal(const Eigen::ArrayXd& x) {
  require_samples(x, true, "lognormal");
  const Eigen::ArrayXd lx = x.log();
  FitResult r;
  r.family = DistFamily::Lognormal;
  r.p1 = lx.mean();
  r.p2 = std::sqrt((lx - r.p1).square().mean());
  return r;
}

FitResult fit_exponential(const Eigen::ArrayXd& x) {
  require_samples(x, true, "exponential");
  FitResult r;
  r.family = DistFamily::Exponential;
  r.p1 = 1.0 / x.mean();
  r.p2 = 0.0;
  return r;
}

// Shape k solves ln(k) - digamma(k) = s with s = ln(mean) - mean(ln x);
// scale follows as theta = mean / k.
FitResult fit_gamma(const Eigen::ArrayXd& x) {
  require_samples(x, true, "gamma");
  const double mean = x.mean();
  const double mean_log = x.log().mean();
  const double s = std::log(mean) - mean_log;
  if (!(s > 0.0)) {
    throw std::runtime_error("fit_family(gamma): degenerate samples (zero spread)");
  }
  double k = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
  FitResult r;
  r.family = DistFamily::Gamma;
  bool converged = false;
  for (int it = 1; it <= kMaxNewtonIters; ++it) {
    const double f = std::log(k) - digamma(k) - s;
    const double fp = 1.0 / k - trigamma(k);
    const double step = f / fp;
    double next = k - step;
    if (!(next > 0.0)) next = k * 0.5;  // keep the iterate in the domain
    r.iterations = it;
    if (std::abs(next - k) <= kNewtonTol * std::max(1.0, std::abs(k))) {
      k = next;
      converged = true;
      break;
    }
    k = next;
  }
  if (!converged) {
    throw std::runtime_error("fit_family(gamma): Newton iteration did not converge");
  }
  r.p1 = k;
  r.p2 = mean / k;
  return r;
}

// Shape k solves A(k) - 1/k = mean(ln x) with A(k) = sum(x^k ln x)/sum(x^k);
// scale follows as lambda = (mean(x^k))^(1/k).
FitResult fit_weibull(const Eigen::ArrayXd& x) {
  require_samples(x, true, "weibull");
  const Eigen::ArrayXd lx = x.log();
  const double mean_log = lx.mean();
  double k = 1.0;
  FitResult r;
  r.family = DistFamily::Weibull;
  bool converged = false;
  for (int it = 1; it <= kMaxNewtonIters; ++it) {
    const Eigen::ArrayXd xk = (k * lx).exp();
    const double sk = xk.sum();
    if (!(sk > 0.0) || !std::isfinite(sk)) {
      throw std::runtime_error("fit_family(weibull): Newton iteration diverged");
    }
    const double a = (xk * lx).sum() / sk;
    const double a2 = (xk * lx.square()).sum() / sk;
    const double f = a - 1.0 / k - mean_log;
    const double fp = (a2 - a * a) + 1.0 / (k * k);
    const double step = f / fp;
    double next = k - step;
    if (!(next > 0.0)) next = k * 0.5;
    r.iterations = it;
    if (std::abs(next - k) <= kNewtonTol * std::max(1.0, std::abs(k))) {
      k = next;
      converged = true;
      break;
    }
    k = next;
    if (!std::isfinite(k)) {
      throw std::runtime_error("fit_family(weibull): Newton iteration diverged");
    }
  }
  if (!converged) {
    throw std::runtime_error("fit_family(weibull): Newton iteration did not converge");
  }
  const Eigen::ArrayXd xk = (k * lx).exp();
  r.p1 = k;
  r.p2 = std::pow(xk.mean(), 1.0 / k);
  return r;
}

}  // namespace

std::string dist_family_id(DistFamily f) {
  switch (f) {
    case DistFamily::Gaussian: return "gaussian";
    case DistFamily::Lognormal: return "lognormal";
    case DistFamily::Exponential: return "exponential";
    case DistFamily::Gamma: return "gamma";
    case DistFamily::Weibull: return "weibull";
  }
  throw std::invalid_argument("dist_family_id: unknown family");
}

DistFamily parse_dist_family(const std::string& id) {
  if (id == "gaussian") return DistFamily::Gaussian;
  if (id == "lognormal") return DistFamily::Lognormal;
  if (id == "exponential") return DistFamily::Exponential;
  if (id == "gamma") return DistFamily::Gamma;
  if (id == "weibull") return DistFamily::Weibull;
  throw std::invalid_argument("parse_dist_family: unknown family '" + id + "'");
}

FitResult fit_family(const Eigen::ArrayXd& samples, DistFamily family) {
  FitResult r;
  switch (family) {
    case DistFamily::Gaussian: r = fit_gaussian(samples); break;
    case DistFamily::Lognormal: r = fit_lognormal(samples); break;
    case DistFamily::Exponential: r = fit_exponential(samples); break;
    case DistFamily::Gamma: r = fit_gamma(samples); break;
    case DistFamily::Weibull: r = fit_weibull(samples); break;
  }
  r.ks = ks_distance(samples, [&r](double x) { return fit_cdf(r, x); });
  return r;
}

std::vector<FitResult> fit_all(const Eigen::ArrayXd& samples,
                               const std::vector<DistFamily>& families) {
  std::vector<FitResult> out;
  out.reserve(families.size());
  for (DistFamily f : families) out.push_back(fit_family(samples, f));
  std::sort(out.begin(), out.end(),
            [](const FitResult& a, const FitResult& b) { return a.ks < b.ks; });
  return out;
}

double fit_cdf(const FitResult& fit, double x) {
  switch (fit.family) {
    case DistFamily::Gaussian:
      return fit.p2 > 0.0 ? normal_cdf((x - fit.p1) / fit.p2) : (x >= fit.p1 ? 1.0 : 0.0);
    case DistFamily::Lognormal:
      if (x <= 0.0) return 0.0;
      return fit.p2 > 0.0 ? normal_cdf((std::log(x) - fit.p1) / fit.p2)
                          : (std::log(x) >= fit.p1 ? 1.0 : 0.0);
    case DistFamily::Exponential:
      return x <= 0.0 ? 0.0 : 1.0 - std::exp(-fit.p1 * x);
    case DistFamily::Gamma:
      return x <= 0.0 ? 0.0 : gamma_p(fit.p1, x / fit.p2);
    case DistFamily::Weibull:
      return x <= 0.0 ? 0.0 : 1.0 - std::exp(-std::pow(x / fit.p2, fit.p1));
  }
  throw std::invalid_argument("fit_cdf: unknown family");
}

double ks_distance(const Eigen::ArrayXd& samples,
                   const std::function<double(double)>& cdf) {
  if (samples.size() == 0) throw std::invalid_argument("ks_distance: empty samples");
  std::vector<double> z(samples.data(), samples.data() + samples.size());
  std::sort(z.begin(), z.end());
  const double n = static_cast<double>(z.size());
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double f = cdf(z[i]);
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

}  // namespace radet
