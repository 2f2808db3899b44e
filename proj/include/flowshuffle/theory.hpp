#pragma once

#include <cstdint>
#include <vector>

namespace flowshuffle {

// Closed-form model of the shuffle process. State per cycle: N_F available
// flows (real-valued), of which U are still-undetected malicious ones. Each
// cycle detects E = U * p flows (p = chance a given flow sits alone in its
// queue) and lets V = N_F * gamma escape, where gamma is the chance a flow
// shares its queue with no undetected malicious flow.
struct TheoryParams {
  std::uint32_t n_queues = 6;
  std::uint32_t n_flows_initial = 64;
  double malicious_ratio = 0.1;
  std::uint32_t n_cycles = 30;

  std::uint32_t arrivals_per_cycle = 0;
  std::uint32_t arrival_window_first = 1;
  std::uint32_t arrival_window_last = 15;

  void validate() const;
};

struct TheoryCycle {
  double p_isolate = 0.0;        // p_c
  double expected_detected = 0.0;  // E_c
  double gamma = 0.0;
  double expected_escaped = 0.0;   // V_c
  double undetected = 0.0;         // U_c, at the start of the cycle
  double n_nonescaped = 0.0;       // N_F_c, at the start of the cycle
};

using TheoryTrace = std::vector<TheoryCycle>;

// Probability that one particular flow out of n_flows lands in one particular
// queue with no companion. Requires n_queues >= 2 and n_flows >= 1.
double p_single_queue(std::uint32_t n_queues, double n_flows);

// Probability that a given flow is alone in whatever queue it landed in:
// n_queues * p_single_queue.
double p_isolated(std::uint32_t n_queues, double n_flows);

// Expected number of flows assigned to unflagged queues, n_flows * gamma with
// gamma = (1 - undetected / n_flows) ^ (n_flows / n_queues). Zero when the
// population is empty.
double expected_escaped(std::uint32_t n_queues, double n_flows,
                        double undetected);

// Runs the per-cycle recursion for params.n_cycles cycles and returns one row
// per cycle. Population and undetected counts decay by the expected detected
// and escaped masses; arrivals join at the top of a cycle inside the window.
//
// Degenerate zones are pinned so every row stays meaningful: once the
// population falls below one flow the isolation probability saturates at 1,
// and the undetected count is capped by the population it lives in.
TheoryTrace run_recursion(const TheoryParams& params);

}  // namespace flowshuffle
