#include "flowshuffle/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flowshuffle {

void TheoryParams::validate() const {
  if (n_queues < 2)
    throw std::invalid_argument("TheoryParams: n_queues must be at least 2");
  if (malicious_ratio < 0.0 || malicious_ratio > 1.0)
    throw std::invalid_argument("TheoryParams: malicious_ratio must be in [0, 1]");
  if (n_cycles < 1)
    throw std::invalid_argument("TheoryParams: n_cycles must be at least 1");
  if (arrival_window_first > arrival_window_last)
    throw std::invalid_argument("TheoryParams: arrival window is inverted");
}

static void check_flow_domain(std::uint32_t n_queues, double n_flows) {
  if (n_queues < 2)
    throw std::invalid_argument("n_queues must be at least 2");
  if (!(n_flows >= 1.0))
    throw std::domain_error("n_flows must be at least 1");
}

double p_single_queue(std::uint32_t n_queues, double n_flows) {
  check_flow_domain(n_queues, n_flows);
  const double nq = static_cast<double>(n_queues);
  return (1.0 / nq) * std::pow((nq - 1.0) / nq, n_flows - 1.0);
}

double p_isolated(std::uint32_t n_queues, double n_flows) {
  check_flow_domain(n_queues, n_flows);
  const double nq = static_cast<double>(n_queues);
  return std::pow((nq - 1.0) / nq, n_flows - 1.0);
}

double expected_escaped(std::uint32_t n_queues, double n_flows,
                        double undetected) {
  if (n_queues < 2)
    throw std::invalid_argument("n_queues must be at least 2");
  if (!(n_flows >= 0.0))
    throw std::domain_error("n_flows must be non-negative");
  if (!(undetected >= 0.0) || undetected > n_flows)
    throw std::domain_error("undetected must be in [0, n_flows]");
  if (n_flows == 0.0) return 0.0;
  const double per_queue = n_flows / static_cast<double>(n_queues);
  const double gamma = std::pow(1.0 - undetected / n_flows, per_queue);
  return n_flows * gamma;
}

TheoryTrace run_recursion(const TheoryParams& params) {
  params.validate();
  TheoryTrace trace;
  trace.reserve(params.n_cycles);

  double n_flows = static_cast<double>(params.n_flows_initial);
  // The initial undetected count is fractional by design: ratio * N_F,0.
  double undetected = params.malicious_ratio * n_flows;

  for (std::uint32_t c = 0; c < params.n_cycles; ++c) {
    TheoryCycle row;
    row.n_nonescaped = n_flows;
    row.undetected = undetected;
    if (n_flows <= 0.0) {
      row.p_isolate = 1.0;
      row.gamma = 1.0;
      row.expected_detected = 0.0;
      row.expected_escaped = 0.0;
    } else {
      // Below one flow the geometric term loses meaning; a lone remnant is
      // isolated with certainty.
      row.p_isolate = n_flows >= 1.0 ? p_isolated(params.n_queues, n_flows) : 1.0;
      row.expected_detected = undetected * row.p_isolate;
      const double per_queue = n_flows / static_cast<double>(params.n_queues);
      row.gamma = std::pow(1.0 - undetected / n_flows, per_queue);
      row.expected_escaped = n_flows * row.gamma;
    }
    trace.push_back(row);

    double arrivals = 0.0;
    if (params.arrivals_per_cycle > 0) {
      const std::uint64_t next_cycle = c + 1;
      if (next_cycle >= params.arrival_window_first &&
          next_cycle <= params.arrival_window_last)
        arrivals = static_cast<double>(params.arrivals_per_cycle);
    }

    const double n_next =
        std::max(0.0, n_flows - row.expected_detected - row.expected_escaped) +
        arrivals;
    // Undetected flows are a subset of the remaining population, so the
    // count is floored at zero and capped by the new population size.
    const double u_next = std::max(0.0, undetected - row.expected_detected);
    undetected = std::min(u_next, n_next);
    n_flows = n_next;
  }
  return trace;
}

}  // namespace flowshuffle
