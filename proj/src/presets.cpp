#include "flowshuffle/presets.hpp"

namespace flowshuffle {

namespace {

Scenario static_population(std::uint32_t n_queues, std::uint32_t n_flows) {
  Scenario s;  // defaults carry the threshold, rates, horizon and seed
  s.node.n_queues = n_queues;
  s.traffic.n_flows_initial = n_flows;
  s.traffic.arrivals_per_cycle = 0;
  return s;
}

Scenario dynamic_population(std::uint32_t arrivals_per_cycle) {
  Scenario s = static_population(7, 64);
  s.traffic.arrivals_per_cycle = arrivals_per_cycle;
  s.traffic.arrival_window_first = 1;
  s.traffic.arrival_window_last = 15;
  return s;
}

std::vector<Preset> make_presets() {
  std::vector<Preset> presets;
  presets.push_back({"fig3-f16",
                     "static population, 16 flows on 6 queues; detection curve",
                     static_population(6, 16), "detected"});
  presets.push_back({"fig3-f32",
                     "static population, 32 flows on 6 queues; detection curve",
                     static_population(6, 32), "detected"});
  presets.push_back({"fig3-f64",
                     "static population, 64 flows on 6 queues; detection curve",
                     static_population(6, 64), "detected"});
  presets.push_back({"fig4-f16",
                     "static population, 16 flows on 6 queues; remaining flows",
                     static_population(6, 16), "non_escaped"});
  presets.push_back({"fig4-f32",
                     "static population, 32 flows on 6 queues; remaining flows",
                     static_population(6, 32), "non_escaped"});
  presets.push_back({"fig4-f64",
                     "static population, 64 flows on 6 queues; remaining flows",
                     static_population(6, 64), "non_escaped"});
  presets.push_back({"fig5-add12",
                     "64 flows on 7 queues, 12 fresh flows per cycle through cycle 15",
                     dynamic_population(12), "combined"});
  presets.push_back({"fig5-add24",
                     "64 flows on 7 queues, 24 fresh flows per cycle through cycle 15",
                     dynamic_population(24), "combined"});

  Preset sweep{"fig6-sweep",
               "128 flows, queue counts swept from 3 to 7; processed flows",
               static_population(3, 128), "processed"};
  sweep.sweep = true;
  sweep.sweep_queues_first = 3;
  sweep.sweep_queues_last = 7;
  presets.push_back(sweep);
  return presets;
}

}  // namespace

const std::vector<Preset>& all_presets() {
  static const std::vector<Preset> presets = make_presets();
  return presets;
}

const Preset* find_preset(std::string_view name) {
  for (const Preset& p : all_presets())
    if (p.name == name) return &p;
  return nullptr;
}

std::string preset_names() {
  std::string out;
  for (const Preset& p : all_presets()) {
    if (!out.empty()) out += ", ";
    out += p.name;
  }
  return out;
}

}  // namespace flowshuffle
