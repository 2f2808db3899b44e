#pragma once

#include <istream>
#include <string>

#include "flowshuffle/experiment.hpp"

namespace flowshuffle {

// Flat key = value overrides for a scenario. Blank lines and '#' comments are
// ignored. Unknown keys and unparsable values raise std::invalid_argument.
//
// Recognized keys mirror the scenario fields:
//   n_queues, threshold_bytes, cycle_length_s, link_speed_bps, drain_model
//   (gross_arrival | served_drain), n_flows_initial, malicious_ratio,
//   legit_rate_mean_bps, legit_rate_std_bps, malicious_rate_bps,
//   arrivals_per_cycle, arrival_window_first, arrival_window_last,
//   n_cycles, n_iterations, base_seed
void apply_config(Scenario& scenario, std::istream& in);

// Same, reading from a file path. Raises std::runtime_error when the file
// cannot be opened.
void apply_config_file(Scenario& scenario, const std::string& path);

// Applies a single key/value pair.
void apply_config_entry(Scenario& scenario, const std::string& key,
                        const std::string& value);

}  // namespace flowshuffle
