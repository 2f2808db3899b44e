#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flowshuffle/experiment.hpp"

namespace flowshuffle {

// Canned experiment configurations. The fig3/fig4 families run the static
// population at three sizes and differ only in which series the emitted plot
// highlights; fig5 adds mid-run arrivals; fig6 sweeps the queue count.
struct Preset {
  std::string_view name;
  std::string_view description;
  Scenario scenario;
  // Series the generated plot script puts front and center.
  std::string_view plot_focus;  // "detected", "non_escaped", "combined", "processed"
  bool sweep = false;
  std::uint32_t sweep_queues_first = 0;
  std::uint32_t sweep_queues_last = 0;
};

const std::vector<Preset>& all_presets();

// nullptr when the name is unknown.
const Preset* find_preset(std::string_view name);

// Comma-separated preset names for error messages.
std::string preset_names();

}  // namespace flowshuffle
