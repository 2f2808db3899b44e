#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "flowshuffle/node.hpp"
#include "flowshuffle/theory.hpp"
#include "flowshuffle/traffic.hpp"

namespace flowshuffle {

// One complete experiment: a node configuration, a workload, and a Monte
// Carlo schedule. Iteration i runs on its own stream seeded by
// derive_seed(base_seed, i), so results are independent of execution order
// and thread count.
struct Scenario {
  NodeConfig node;
  TrafficConfig traffic;
  std::uint32_t n_cycles = 30;
  std::uint32_t n_iterations = 1000;
  std::uint64_t base_seed = 42;

  void validate() const;
};

// Per-cycle observations from one iteration.
//
// non_escaped and processed_cumulative are snapshots taken at the start of
// the cycle, after that cycle's arrivals joined but before any traffic or
// mitigation, so processed_cumulative + non_escaped equals every flow
// admitted so far. The detected/escaped fields count the transitions the
// cycle's mitigation pass then produced.
struct CycleMetrics {
  std::uint32_t non_escaped = 0;
  std::uint32_t processed_cumulative = 0;
  std::uint32_t detected_malicious = 0;
  std::uint32_t detected_legitimate = 0;  // false positives
  std::uint32_t escaped_legitimate = 0;
  std::uint32_t escaped_malicious = 0;

  std::uint32_t detected_total() const {
    return detected_malicious + detected_legitimate;
  }
  std::uint32_t escaped_total() const {
    return escaped_legitimate + escaped_malicious;
  }
};

struct IterationResult {
  std::vector<CycleMetrics> cycles;
  std::uint32_t planted_malicious = 0;
  std::uint32_t admitted_total = 0;
  std::uint32_t final_available = 0;
  std::uint32_t final_escaped = 0;
  std::uint32_t final_dropped = 0;
  std::uint64_t false_positives_total = 0;

  std::uint32_t final_processed() const { return final_escaped + final_dropped; }
};

// Observer invoked after every mitigation pass with the node as it stood
// before the pass (traffic already offered), the node after, and the pass
// outcome. Used by audits; the hot path skips the copy when empty.
using CycleHook =
    std::function<void(const Node& before, const Node& after,
                       const CycleOutcome& outcome)>;

// Runs one iteration on the given seed.
IterationResult run_iteration(const Scenario& scenario, std::uint64_t seed,
                              const CycleHook& hook = {});

// Mean and sample standard deviation (n-1 divisor, zero when n < 2) across
// iterations, one entry per cycle.
struct SeriesStats {
  std::vector<double> mean;
  std::vector<double> stddev;
};

struct RunStatistics {
  std::uint32_t n_cycles = 0;
  std::uint32_t n_iterations = 0;
  std::uint32_t planted_malicious = 0;  // identical in every iteration
  std::uint32_t admitted_total = 0;     // initial flows plus all arrivals

  SeriesStats detected_total;
  SeriesStats detected_malicious;
  SeriesStats escaped_total;
  SeriesStats non_escaped;
  SeriesStats processed_cumulative;

  // Raw false-positive counts summed across iterations, per cycle.
  std::vector<std::uint64_t> false_positives_per_cycle;
  std::uint64_t false_positives_total = 0;

  double mean_final_processed = 0.0;
  double std_final_processed = 0.0;
};

// Runs every iteration of the scenario and aggregates. n_threads = 0 picks
// the hardware concurrency; any thread count produces bit-identical output
// because aggregation always walks iterations in index order.
RunStatistics run_scenario(const Scenario& scenario, unsigned n_threads = 0,
                           const CycleHook& hook = {});

// Simulation-vs-theory comparison for one metric series.
struct MetricComparison {
  std::string metric;
  std::vector<double> sim_mean;
  std::vector<double> sim_std;
  std::vector<double> theory;
  std::vector<double> abs_dev;
  std::vector<bool> within_band;  // |theory - mean| <= stddev (+ epsilon)
  double max_abs_dev = 0.0;
  std::uint32_t worst_cycle = 0;
  double within_fraction = 0.0;
};

struct ComparisonReport {
  std::uint32_t n_cycles = 0;
  std::vector<MetricComparison> metrics;  // detected, non_escaped, escaped
  double overall_within_fraction = 0.0;
  double max_abs_dev = 0.0;
  std::string max_dev_metric;
  std::uint32_t max_dev_cycle = 0;
};

// Pairs the simulated series with their analytical counterparts: detected
// malicious vs E_c, non-escaped vs N_F_c, escaped vs V_c. The trace must
// cover exactly the simulated horizon.
ComparisonReport compare_with_theory(const RunStatistics& stats,
                                     const TheoryTrace& trace);

// The analytical parameters implied by a scenario.
TheoryParams theory_params_for(const Scenario& scenario);

struct SweepPoint {
  std::uint32_t n_queues = 0;
  double mean_processed = 0.0;
  double std_processed = 0.0;
};

// Re-runs the scenario for each queue count in [first, last] and records the
// final processed-flow statistics. Iteration seeds are shared across points.
std::vector<SweepPoint> run_sweep(Scenario scenario, std::uint32_t first,
                                  std::uint32_t last, unsigned n_threads = 0);

}  // namespace flowshuffle
