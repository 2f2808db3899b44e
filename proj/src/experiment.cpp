#include "flowshuffle/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

namespace flowshuffle {

void Scenario::validate() const {
  node.validate();
  traffic.validate();
  if (n_cycles < 1)
    throw std::invalid_argument("Scenario: n_cycles must be at least 1");
  if (n_iterations < 1)
    throw std::invalid_argument("Scenario: n_iterations must be at least 1");
}

IterationResult run_iteration(const Scenario& scenario, std::uint64_t seed,
                              const CycleHook& hook) {
  scenario.validate();
  Rng rng(seed);
  Node node(scenario.node);

  const std::vector<FlowKind> kinds =
      build_initial_population(scenario.traffic, rng);
  IterationResult result;
  for (FlowKind kind : kinds) {
    node.admit_flow(kind, rng);
    if (kind == FlowKind::Malicious) result.planted_malicious += 1;
  }

  result.cycles.reserve(scenario.n_cycles);
  for (std::uint32_t c = 0; c < scenario.n_cycles; ++c) {
    const std::uint32_t arrivals = arrivals_this_cycle(scenario.traffic, c);
    for (std::uint32_t a = 0; a < arrivals; ++a)
      node.admit_flow(FlowKind::Legitimate, rng);

    CycleMetrics metrics;
    metrics.non_escaped = node.available_count();
    metrics.processed_cumulative = node.escaped_count() + node.dropped_count();

    // Flows offer their cycle traffic in admission order.
    const std::uint32_t n_flows = node.flow_count();
    for (FlowId f = 0; f < n_flows; ++f) {
      const FlowRecord& rec = node.flow(f);
      if (rec.assignment.state != FlowAssignment::State::Available) continue;
      node.offer_bytes(
          f, cycle_bytes(scenario.traffic, rec.kind,
                         scenario.node.cycle_length_s, rng));
    }

    std::optional<Node> before;
    if (hook) before.emplace(node);
    const CycleOutcome outcome = node.run_mitigation_cycle(rng);
    if (hook) hook(*before, node, outcome);

    metrics.detected_malicious = outcome.dropped_malicious;
    metrics.detected_legitimate = outcome.dropped_legitimate;
    metrics.escaped_legitimate = outcome.escaped_legitimate;
    metrics.escaped_malicious = outcome.escaped_malicious;
    result.false_positives_total += outcome.dropped_legitimate;
    result.cycles.push_back(metrics);
  }

  result.admitted_total = node.flow_count();
  result.final_available = node.available_count();
  result.final_escaped = node.escaped_count();
  result.final_dropped = node.dropped_count();
  return result;
}

namespace {

template <typename Get>
SeriesStats collect_series(const std::vector<IterationResult>& results,
                           std::uint32_t n_cycles, Get get) {
  SeriesStats stats;
  stats.mean.assign(n_cycles, 0.0);
  stats.stddev.assign(n_cycles, 0.0);
  const double n = static_cast<double>(results.size());
  for (std::uint32_t c = 0; c < n_cycles; ++c) {
    double sum = 0.0;
    for (const IterationResult& r : results)
      sum += static_cast<double>(get(r.cycles[c]));
    const double mean = sum / n;
    double ss = 0.0;
    for (const IterationResult& r : results) {
      const double d = static_cast<double>(get(r.cycles[c])) - mean;
      ss += d * d;
    }
    stats.mean[c] = mean;
    stats.stddev[c] = results.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  }
  return stats;
}

}  // namespace

RunStatistics run_scenario(const Scenario& scenario, unsigned n_threads,
                           const CycleHook& hook) {
  scenario.validate();
  const std::uint32_t n_iter = scenario.n_iterations;
  std::vector<IterationResult> results(n_iter);

  if (n_threads == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    n_threads = hw > 0 ? hw : 1;
  }
  n_threads = std::min<unsigned>(n_threads, n_iter);

  if (n_threads <= 1) {
    for (std::uint32_t i = 0; i < n_iter; ++i)
      results[i] =
          run_iteration(scenario, derive_seed(scenario.base_seed, i), hook);
  } else {
    std::atomic<std::uint32_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
      for (;;) {
        const std::uint32_t i = next.fetch_add(1);
        if (i >= n_iter) return;
        try {
          results[i] = run_iteration(scenario,
                                     derive_seed(scenario.base_seed, i), hook);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  RunStatistics stats;
  stats.n_cycles = scenario.n_cycles;
  stats.n_iterations = n_iter;
  stats.planted_malicious = results[0].planted_malicious;
  stats.admitted_total = results[0].admitted_total;

  stats.detected_total = collect_series(
      results, stats.n_cycles,
      [](const CycleMetrics& m) { return m.detected_total(); });
  stats.detected_malicious = collect_series(
      results, stats.n_cycles,
      [](const CycleMetrics& m) { return m.detected_malicious; });
  stats.escaped_total = collect_series(
      results, stats.n_cycles,
      [](const CycleMetrics& m) { return m.escaped_total(); });
  stats.non_escaped = collect_series(
      results, stats.n_cycles,
      [](const CycleMetrics& m) { return m.non_escaped; });
  stats.processed_cumulative = collect_series(
      results, stats.n_cycles,
      [](const CycleMetrics& m) { return m.processed_cumulative; });

  stats.false_positives_per_cycle.assign(stats.n_cycles, 0);
  for (const IterationResult& r : results) {
    stats.false_positives_total += r.false_positives_total;
    for (std::uint32_t c = 0; c < stats.n_cycles; ++c)
      stats.false_positives_per_cycle[c] += r.cycles[c].detected_legitimate;
  }

  double sum = 0.0;
  for (const IterationResult& r : results)
    sum += static_cast<double>(r.final_processed());
  stats.mean_final_processed = sum / static_cast<double>(n_iter);
  double ss = 0.0;
  for (const IterationResult& r : results) {
    const double d =
        static_cast<double>(r.final_processed()) - stats.mean_final_processed;
    ss += d * d;
  }
  stats.std_final_processed =
      n_iter > 1 ? std::sqrt(ss / static_cast<double>(n_iter - 1)) : 0.0;
  return stats;
}

namespace {

MetricComparison compare_series(const std::string& name,
                                const SeriesStats& sim,
                                const std::vector<double>& theory) {
  MetricComparison cmp;
  cmp.metric = name;
  cmp.sim_mean = sim.mean;
  cmp.sim_std = sim.stddev;
  cmp.theory = theory;
  const std::size_t n = sim.mean.size();
  cmp.abs_dev.resize(n);
  cmp.within_band.resize(n);
  std::size_t within = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const double dev = std::abs(theory[c] - sim.mean[c]);
    cmp.abs_dev[c] = dev;
    // Epsilon absorbs rounding when the band edge is hit exactly.
    const bool ok = dev <= sim.stddev[c] + 1e-9;
    cmp.within_band[c] = ok;
    if (ok) ++within;
    if (dev > cmp.max_abs_dev) {
      cmp.max_abs_dev = dev;
      cmp.worst_cycle = static_cast<std::uint32_t>(c);
    }
  }
  cmp.within_fraction = n > 0 ? static_cast<double>(within) / n : 1.0;
  return cmp;
}

}  // namespace

ComparisonReport compare_with_theory(const RunStatistics& stats,
                                     const TheoryTrace& trace) {
  if (trace.size() != stats.n_cycles)
    throw std::invalid_argument(
        "compare_with_theory: trace and simulation horizons differ");

  std::vector<double> e_c(trace.size()), nf_c(trace.size()), v_c(trace.size());
  for (std::size_t c = 0; c < trace.size(); ++c) {
    e_c[c] = trace[c].expected_detected;
    nf_c[c] = trace[c].n_nonescaped;
    v_c[c] = trace[c].expected_escaped;
  }

  ComparisonReport report;
  report.n_cycles = stats.n_cycles;
  report.metrics.push_back(
      compare_series("detected", stats.detected_malicious, e_c));
  report.metrics.push_back(
      compare_series("non_escaped", stats.non_escaped, nf_c));
  report.metrics.push_back(compare_series("escaped", stats.escaped_total, v_c));

  std::size_t within = 0, total = 0;
  for (const MetricComparison& m : report.metrics) {
    for (bool ok : m.within_band) {
      if (ok) ++within;
      ++total;
    }
    if (m.max_abs_dev > report.max_abs_dev) {
      report.max_abs_dev = m.max_abs_dev;
      report.max_dev_metric = m.metric;
      report.max_dev_cycle = m.worst_cycle;
    }
  }
  report.overall_within_fraction =
      total > 0 ? static_cast<double>(within) / static_cast<double>(total) : 1.0;
  return report;
}

TheoryParams theory_params_for(const Scenario& scenario) {
  TheoryParams params;
  params.n_queues = scenario.node.n_queues;
  params.n_flows_initial = scenario.traffic.n_flows_initial;
  params.malicious_ratio = scenario.traffic.malicious_ratio;
  params.n_cycles = scenario.n_cycles;
  params.arrivals_per_cycle = scenario.traffic.arrivals_per_cycle;
  params.arrival_window_first = scenario.traffic.arrival_window_first;
  params.arrival_window_last = scenario.traffic.arrival_window_last;
  return params;
}

std::vector<SweepPoint> run_sweep(Scenario scenario, std::uint32_t first,
                                  std::uint32_t last, unsigned n_threads) {
  if (first < 2 || first > last)
    throw std::invalid_argument("run_sweep: queue range must satisfy 2 <= first <= last");
  std::vector<SweepPoint> points;
  points.reserve(last - first + 1);
  for (std::uint32_t q = first; q <= last; ++q) {
    scenario.node.n_queues = q;
    const RunStatistics stats = run_scenario(scenario, n_threads);
    points.push_back({q, stats.mean_final_processed, stats.std_final_processed});
  }
  return points;
}

}  // namespace flowshuffle
