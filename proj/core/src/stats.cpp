#include "cegb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cegb/error.hpp"

namespace cegb {

namespace {

double sorted_quantile(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = static_cast<double>(n - 1) * q;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

} // namespace

double quantile(std::span<const double> sample, double q) {
  if (sample.empty()) raise(errc::empty_sample, "quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q outside [0, 1]");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted_quantile(sorted, q);
}

SummaryStat summarize(std::span<const double> sample, const BootstrapConfig& cfg) {
  if (sample.empty()) raise(errc::empty_sample, "summarize of an empty sample");
  if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0)) {
    throw std::invalid_argument("summarize: confidence outside (0, 1)");
  }

  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());

  SummaryStat out;
  out.n = sorted.size();
  out.median = sorted_quantile(sorted, 0.5);
  out.q1 = sorted_quantile(sorted, 0.25);
  out.q3 = sorted_quantile(sorted, 0.75);

  const std::size_t n = sorted.size();
  SeededRng rng(cfg.seed);
  std::vector<double> boot(cfg.resamples);
  std::vector<double> scratch(n);
  for (std::size_t b = 0; b < cfg.resamples; ++b) {
    for (std::size_t i = 0; i < n; ++i) scratch[i] = sorted[rng.next_index(n)];
    std::sort(scratch.begin(), scratch.end());
    boot[b] = sorted_quantile(scratch, 0.5);
  }
  std::sort(boot.begin(), boot.end());
  const double alpha = 1.0 - cfg.confidence;
  out.ci95.lo = sorted_quantile(boot, alpha / 2.0);
  out.ci95.hi = sorted_quantile(boot, 1.0 - alpha / 2.0);
  return out;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials == 0) raise(errc::empty_sample, "wilson_interval with zero trials");
  if (successes > trials) {
    throw std::invalid_argument("wilson_interval: successes exceed trials");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("wilson_interval: confidence outside (0, 1)");
  }

  const double z = normal_quantile(0.5 + confidence / 2.0);
  const double z2 = z * z;
  const double n = static_cast<double>(trials);
  const double g = static_cast<double>(successes);

  const double center = (g + z2 / 2.0) / (n + z2);
  const double radius = z / (n + z2) * std::sqrt(g * (n - g) / n + z2 / 4.0);

  Interval out;
  out.lo = successes == 0 ? 0.0 : std::max(0.0, center - radius);
  out.hi = successes == trials ? 1.0 : std::min(1.0, center + radius);
  return out;
}

Proportion make_proportion(std::uint64_t successes, std::uint64_t trials, double confidence) {
  Proportion p;
  p.successes = successes;
  p.trials = trials;
  p.point = trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  p.wilson = wilson_interval(successes, trials, confidence);
  return p;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p outside (0, 1)");

  // Acklam's coefficients.
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  static constexpr double p_low = 0.02425;
  static constexpr double p_high = 1.0 - p_low;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= p_high) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // One Halley step against the exact CDF takes the rational estimate
  // (relative error below 1.2e-9) to the last bit.
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  x -= u / (1.0 + x * u / 2.0);
  return x;
}

std::uint64_t mix_seed(std::uint64_t seed, std::string_view label) {
  return splitmix64(seed ^ fnv1a64(label));
}

double SeededRng::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_unit_open();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

} // namespace cegb
