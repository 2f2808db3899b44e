#include "flowshuffle/node.hpp"

#include <algorithm>
#include <cmath>

namespace flowshuffle {

void NodeConfig::validate() const {
  if (n_queues < 2)
    throw std::invalid_argument("NodeConfig: n_queues must be at least 2");
  if (!(threshold_bytes > 0.0))
    throw std::invalid_argument("NodeConfig: threshold_bytes must be positive");
  if (!(cycle_length_s > 0.0))
    throw std::invalid_argument("NodeConfig: cycle_length_s must be positive");
  if (!(link_speed_bps > 0.0))
    throw std::invalid_argument("NodeConfig: link_speed_bps must be positive");
}

Node::Node(NodeConfig config) : config_(config) {
  config_.validate();
  queues_.resize(config_.n_queues);
}

FlowId Node::admit_flow(FlowKind kind, Rng& rng) {
  const QueueId q = rng.uniform_index(config_.n_queues);
  FlowRecord rec;
  rec.kind = kind;
  rec.assignment.state = FlowAssignment::State::Available;
  rec.assignment.queue = q;
  flows_.push_back(rec);
  queues_[q].flow_count += 1;
  available_ += 1;
  return static_cast<FlowId>(flows_.size() - 1);
}

const FlowRecord& Node::flow(FlowId id) const {
  if (id >= flows_.size())
    throw std::out_of_range("Node::flow: unknown flow id");
  return flows_[id];
}

void Node::offer_bytes(FlowId id, double bytes) {
  if (id >= flows_.size())
    throw std::out_of_range("Node::offer_bytes: unknown flow id");
  if (!(bytes >= 0.0))
    throw std::invalid_argument("Node::offer_bytes: bytes must be non-negative");
  FlowRecord& rec = flows_[id];
  if (rec.assignment.state != FlowAssignment::State::Available)
    throw OfferToNonAvailableFlow(id);
  queues_[rec.assignment.queue].bytes_total += bytes;
}

// Fair-share service: every backlogged queue gets an equal slice of the
// remaining capacity; slices a queue cannot use are redistributed. Each round
// either exhausts the capacity or empties at least one queue, so the loop
// runs at most n_queues rounds.
void Node::drain_queues() {
  double capacity = config_.cycle_capacity_bytes();
  for (;;) {
    std::uint32_t backlogged = 0;
    for (const QueueState& q : queues_)
      if (q.bytes_total > 0.0) ++backlogged;
    if (backlogged == 0 || capacity <= 0.0) return;

    const double share = capacity / backlogged;
    bool emptied = false;
    for (QueueState& q : queues_) {
      if (q.bytes_total <= 0.0) continue;
      const double take = std::min(share, q.bytes_total);
      q.bytes_total -= take;
      capacity -= take;
      if (q.bytes_total <= 0.0) {
        q.bytes_total = 0.0;
        emptied = true;
      }
    }
    // No queue emptied means every queue absorbed its full share and the
    // capacity is spent (up to rounding dust).
    if (!emptied) return;
  }
}

CycleOutcome Node::run_mitigation_cycle(Rng& rng) {
  if (config_.drain_model == DrainModel::ServedDrain) drain_queues();

  // Step 1: flag queues whose length grew past the threshold, then move the
  // snapshot forward. Flags persist until the next cycle's step 1.
  for (QueueState& q : queues_) {
    q.flagged = (q.bytes_total - q.bytes_snapshot) > config_.threshold_bytes;
    q.bytes_snapshot = q.bytes_total;
  }

  // Step 2 judges every available flow against the flags and occupancy
  // counts as they stood at the end of step 1; reassignments made while
  // iterating must not influence later verdicts.
  std::vector<std::uint32_t> counts_at_check(queues_.size());
  for (std::size_t q = 0; q < queues_.size(); ++q)
    counts_at_check[q] = queues_[q].flow_count;

  CycleOutcome outcome;
  for (FlowRecord& rec : flows_) {
    if (rec.assignment.state != FlowAssignment::State::Available) continue;
    const QueueId q = rec.assignment.queue;
    if (!queues_[q].flagged) {
      rec.assignment.state = FlowAssignment::State::Escaped;
      queues_[q].flow_count -= 1;
      available_ -= 1;
      escaped_ += 1;
      if (rec.kind == FlowKind::Malicious)
        outcome.escaped_malicious += 1;
      else
        outcome.escaped_legitimate += 1;
    } else if (counts_at_check[q] == 1) {
      rec.assignment.state = FlowAssignment::State::Dropped;
      queues_[q].flow_count -= 1;
      available_ -= 1;
      dropped_ += 1;
      if (rec.kind == FlowKind::Malicious)
        outcome.dropped_malicious += 1;
      else
        outcome.dropped_legitimate += 1;
    } else {
      // Shared flagged queue: shuffle to a fresh uniform queue; landing on
      // the same queue again is a legal outcome.
      const QueueId next = rng.uniform_index(config_.n_queues);
      queues_[q].flow_count -= 1;
      queues_[next].flow_count += 1;
      rec.assignment.queue = next;
      outcome.reassigned += 1;
    }
  }
  outcome.remaining_available = available_;
  cycle_index_ += 1;
  return outcome;
}

void Node::verify_consistency() const {
  std::vector<std::uint32_t> counts(queues_.size(), 0);
  std::uint32_t avail = 0, esc = 0, drop = 0;
  for (const FlowRecord& rec : flows_) {
    switch (rec.assignment.state) {
      case FlowAssignment::State::Available:
        if (rec.assignment.queue >= queues_.size())
          throw std::logic_error("flow assigned to a queue that does not exist");
        counts[rec.assignment.queue] += 1;
        ++avail;
        break;
      case FlowAssignment::State::Escaped:
        ++esc;
        break;
      case FlowAssignment::State::Dropped:
        ++drop;
        break;
    }
  }
  if (avail != available_ || esc != escaped_ || drop != dropped_)
    throw std::logic_error("cached state counters disagree with the flow table");
  if (avail + esc + drop != flows_.size())
    throw std::logic_error("flow states do not partition the admitted flows");
  for (std::size_t q = 0; q < queues_.size(); ++q) {
    if (counts[q] != queues_[q].flow_count)
      throw std::logic_error("queue occupancy counter disagrees with the flow table");
    if (queues_[q].bytes_total < 0.0 || queues_[q].bytes_snapshot < 0.0)
      throw std::logic_error("negative queue length");
    if (config_.drain_model == DrainModel::GrossArrival &&
        queues_[q].bytes_total + 1e-9 < queues_[q].bytes_snapshot)
      throw std::logic_error("gross arrival counter moved backwards");
  }
}

}  // namespace flowshuffle
