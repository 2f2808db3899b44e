#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowshuffle/rng.hpp"

namespace flowshuffle {

using FlowId = std::uint32_t;
using QueueId = std::uint32_t;

enum class FlowKind : std::uint8_t { Legitimate, Malicious };

// How queue length evolves between threshold checks.
//
// GrossArrival: the length counter accumulates every byte ever enqueued and
// is never reduced, so the flagging test compares per-cycle arrival mass
// against the threshold directly.
//
// ServedDrain: before each threshold check the link serves up to one cycle's
// worth of capacity, shared fairly across backlogged queues; the counter is
// the standing backlog that service could not clear.
enum class DrainModel : std::uint8_t { GrossArrival, ServedDrain };

struct NodeConfig {
  std::uint32_t n_queues = 6;
  double threshold_bytes = 62.5e6;  // L
  double cycle_length_s = 10.0;     // tau
  double link_speed_bps = 50.0e6;
  DrainModel drain_model = DrainModel::GrossArrival;

  // Bytes the link can serve in one cycle.
  double cycle_capacity_bytes() const {
    return link_speed_bps * cycle_length_s / 8.0;
  }

  void validate() const;
};

struct QueueState {
  double bytes_total = 0.0;     // l_q: gross arrivals or standing backlog
  double bytes_snapshot = 0.0;  // l_q at the end of the previous check
  std::uint32_t flow_count = 0; // flows currently assigned here
  bool flagged = false;         // outcome of the latest threshold check
};

struct FlowAssignment {
  enum class State : std::uint8_t { Available, Escaped, Dropped };
  State state = State::Available;
  QueueId queue = 0;  // meaningful only while Available
};

struct FlowRecord {
  FlowKind kind = FlowKind::Legitimate;
  FlowAssignment assignment;
};

// Per-cycle transition counts, split by flow kind. Dropped legitimate flows
// are false positives; escaped malicious flows slipped through unflagged.
struct CycleOutcome {
  std::uint32_t dropped_malicious = 0;
  std::uint32_t dropped_legitimate = 0;
  std::uint32_t escaped_legitimate = 0;
  std::uint32_t escaped_malicious = 0;
  std::uint32_t reassigned = 0;
  std::uint32_t remaining_available = 0;

  std::uint32_t dropped_total() const {
    return dropped_malicious + dropped_legitimate;
  }
  std::uint32_t escaped_total() const {
    return escaped_legitimate + escaped_malicious;
  }
};

// Thrown when traffic is offered on behalf of a flow that has already left
// the available pool.
class OfferToNonAvailableFlow : public std::logic_error {
 public:
  explicit OfferToNonAvailableFlow(FlowId id)
      : std::logic_error("flow " + std::to_string(id) +
                         " is not available; bytes cannot be offered") {}
};

// An edge node that shuffles suspicious flows across queues until malicious
// ones end up isolated.
//
// Lifecycle of a flow: admitted to a uniformly random queue, then at each
// mitigation cycle either escapes (its queue stayed under threshold),
// is dropped (over-threshold queue, flow isolated), or is reassigned to a
// fresh uniform queue. Escaped and Dropped are absorbing.
class Node {
 public:
  explicit Node(NodeConfig config);

  // Places a new flow on a uniformly random queue. Returns its id.
  FlowId admit_flow(FlowKind kind, Rng& rng);

  // Accounts bytes sent by an available flow into its current queue.
  void offer_bytes(FlowId id, double bytes);

  // One two-step mitigation pass: flag queues whose length grew by more than
  // the threshold since the last check, then judge every available flow
  // against the flags and occupancy counts frozen at that instant.
  CycleOutcome run_mitigation_cycle(Rng& rng);

  const NodeConfig& config() const { return config_; }
  const std::vector<QueueState>& queues() const { return queues_; }
  const FlowRecord& flow(FlowId id) const;
  std::uint32_t flow_count() const {
    return static_cast<std::uint32_t>(flows_.size());
  }
  std::uint64_t cycle_index() const { return cycle_index_; }

  std::uint32_t available_count() const { return available_; }
  std::uint32_t escaped_count() const { return escaped_; }
  std::uint32_t dropped_count() const { return dropped_; }

  // Recounts everything from the flow table and throws std::logic_error on
  // any mismatch with cached counters. Cheap enough to call in tests after
  // every operation.
  void verify_consistency() const;

 private:
  void drain_queues();

  NodeConfig config_;
  std::vector<QueueState> queues_;
  std::vector<FlowRecord> flows_;
  std::uint64_t cycle_index_ = 0;
  std::uint32_t available_ = 0;
  std::uint32_t escaped_ = 0;
  std::uint32_t dropped_ = 0;
};

}  // namespace flowshuffle
