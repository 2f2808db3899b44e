#pragma once

#include <cstdint>
#include <vector>

#include "flowshuffle/node.hpp"
#include "flowshuffle/rng.hpp"

namespace flowshuffle {

// Workload description. Rates are in bits per second; byte quantities use
// decimal units throughout (1 MB = 1e6 bytes), matching how link speeds are
// quoted.
struct TrafficConfig {
  std::uint32_t n_flows_initial = 64;
  double malicious_ratio = 0.1;  // rho, fraction of the initial population

  double legit_rate_mean_bps = 2.0e6;
  double legit_rate_std_bps = 0.5e6;
  double malicious_rate_bps = 100.0e6;

  // Fresh legitimate flows joining while mitigation runs: arrivals_per_cycle
  // flows at the top of every cycle c with window_first <= c <= window_last.
  std::uint32_t arrivals_per_cycle = 0;
  std::uint32_t arrival_window_first = 1;
  std::uint32_t arrival_window_last = 15;

  void validate() const;
};

// Kinds for the initial population: round(ratio * n) malicious flows placed
// by a uniform shuffle, the rest legitimate.
std::vector<FlowKind> build_initial_population(const TrafficConfig& config,
                                               Rng& rng);

// Bytes one flow offers during a cycle of length tau_s. Malicious flows send
// at their fixed rate and consume no randomness; legitimate flows draw a
// Gaussian rate clamped below at zero (no redraw).
double cycle_bytes(const TrafficConfig& config, FlowKind kind, double tau_s,
                   Rng& rng);

// Number of fresh legitimate flows joining at the top of the given cycle.
std::uint32_t arrivals_this_cycle(const TrafficConfig& config,
                                  std::uint64_t cycle);

}  // namespace flowshuffle
