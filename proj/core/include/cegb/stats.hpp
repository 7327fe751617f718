#pragma once

/// Statistical convention used by every metric family: type-7 quantiles,
/// percentile bootstrap of the median, Wilson score intervals for
/// proportions. All randomness flows from an explicitly seeded 64-bit
/// generator, so identical inputs and configuration give bit-identical
/// results on every platform.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace cegb {

struct Interval {
  double lo = 0;
  double hi = 0;

  bool operator==(const Interval&) const = default;
};

struct BootstrapConfig {
  std::size_t resamples = 2000;
  double confidence = 0.95;
  std::uint64_t seed = 42;
};

// Robust summary of a real-valued sample. The interval is a percentile
// bootstrap of the median under BootstrapConfig.
struct SummaryStat {
  static constexpr std::string_view method = "bootstrap-percentile";

  std::size_t n = 0;
  double median = 0;
  double q1 = 0;
  double q3 = 0;
  Interval ci95;

  double iqr() const { return q3 - q1; }

  bool operator==(const SummaryStat&) const = default;
};

// Linear-interpolation quantile (type 7): h = (n - 1) q on the sorted
// sample. q must lie in [0, 1]; the sample must be non-empty.
double quantile(std::span<const double> sample, double q);

SummaryStat summarize(std::span<const double> sample, const BootstrapConfig& cfg);

// Wilson score interval for a binomial proportion, no continuity
// correction. Exact bounds at the boundary counts: lo = 0 when
// successes = 0, hi = 1 when successes = trials.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence = 0.95);

struct Proportion {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double point = 0;
  Interval wilson;

  bool operator==(const Proportion&) const = default;
};

Proportion make_proportion(std::uint64_t successes, std::uint64_t trials,
                           double confidence = 0.95);

// Inverse standard normal CDF: Acklam's rational approximation polished by
// one Halley step, so the critical value for any confidence level is
// available at machine precision:
// normal_quantile(0.975) = 1.9599639845400545.
double normal_quantile(double p);

// Deterministic seed derivation for named sub-streams (metric families,
// individual summaries): splitmix64(seed ^ fnv1a64(label)).
std::uint64_t mix_seed(std::uint64_t seed, std::string_view label);

// Thin wrapper over std::mt19937_64 that derives every variate from the
// raw 64-bit stream with explicit algorithms: bounded indices via 128-bit
// multiply-shift, uniforms via the top 53 bits, normals via Box-Muller.
// Standard-library distributions are avoided on purpose; their internals
// differ between standard libraries and would break bit-reproducibility.
class SeededRng {
public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a logarithm argument.
  double next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform index in [0, n); n must be positive.
  std::size_t next_index(std::size_t n) {
    using u128 = unsigned __int128;
    return static_cast<std::size_t>((u128(next_u64()) * u128(n)) >> 64);
  }

  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Standard normal, basic Box-Muller with pair caching.
  double next_normal();

private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0;
};

} // namespace cegb
