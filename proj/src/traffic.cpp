#include "flowshuffle/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace flowshuffle {

void TrafficConfig::validate() const {
  if (malicious_ratio < 0.0 || malicious_ratio > 1.0)
    throw std::invalid_argument("TrafficConfig: malicious_ratio must be in [0, 1]");
  if (!(legit_rate_mean_bps >= 0.0) || !(legit_rate_std_bps >= 0.0) ||
      !(malicious_rate_bps >= 0.0))
    throw std::invalid_argument("TrafficConfig: rates must be non-negative");
  if (arrival_window_first > arrival_window_last)
    throw std::invalid_argument("TrafficConfig: arrival window is inverted");
}

std::vector<FlowKind> build_initial_population(const TrafficConfig& config,
                                               Rng& rng) {
  config.validate();
  const std::uint32_t n = config.n_flows_initial;
  const auto rounded =
      std::llround(config.malicious_ratio * static_cast<double>(n));
  const std::uint32_t n_malicious =
      std::min<std::uint32_t>(static_cast<std::uint32_t>(rounded), n);

  std::vector<FlowKind> kinds(n, FlowKind::Legitimate);
  std::fill_n(kinds.begin(), n_malicious, FlowKind::Malicious);
  // Fisher-Yates on the run's own source keeps the placement reproducible.
  for (std::uint32_t i = n; i > 1; --i) {
    const std::uint32_t j = rng.uniform_index(i);
    std::swap(kinds[i - 1], kinds[j]);
  }
  return kinds;
}

double cycle_bytes(const TrafficConfig& config, FlowKind kind, double tau_s,
                   Rng& rng) {
  if (!(tau_s > 0.0))
    throw std::invalid_argument("cycle_bytes: tau_s must be positive");
  double rate_bps;
  if (kind == FlowKind::Malicious) {
    rate_bps = config.malicious_rate_bps;
  } else {
    rate_bps = std::max(
        0.0, rng.normal(config.legit_rate_mean_bps, config.legit_rate_std_bps));
  }
  return rate_bps * tau_s / 8.0;
}

std::uint32_t arrivals_this_cycle(const TrafficConfig& config,
                                  std::uint64_t cycle) {
  if (config.arrivals_per_cycle == 0) return 0;
  if (cycle < config.arrival_window_first || cycle > config.arrival_window_last)
    return 0;
  return config.arrivals_per_cycle;
}

}  // namespace flowshuffle
