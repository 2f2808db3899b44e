#include "flowshuffle/config_file.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace flowshuffle {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw std::invalid_argument("config: bad numeric value for " + key + ": " + value);
  return v;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& value) {
  Int v{};
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw std::invalid_argument("config: bad integer value for " + key + ": " + value);
  return v;
}

}  // namespace

void apply_config_entry(Scenario& s, const std::string& key,
                        const std::string& value) {
  if (key == "n_queues")
    s.node.n_queues = parse_int<std::uint32_t>(key, value);
  else if (key == "threshold_bytes")
    s.node.threshold_bytes = parse_double(key, value);
  else if (key == "cycle_length_s")
    s.node.cycle_length_s = parse_double(key, value);
  else if (key == "link_speed_bps")
    s.node.link_speed_bps = parse_double(key, value);
  else if (key == "drain_model") {
    if (value == "gross_arrival")
      s.node.drain_model = DrainModel::GrossArrival;
    else if (value == "served_drain")
      s.node.drain_model = DrainModel::ServedDrain;
    else
      throw std::invalid_argument(
          "config: drain_model must be gross_arrival or served_drain, got " + value);
  } else if (key == "n_flows_initial")
    s.traffic.n_flows_initial = parse_int<std::uint32_t>(key, value);
  else if (key == "malicious_ratio")
    s.traffic.malicious_ratio = parse_double(key, value);
  else if (key == "legit_rate_mean_bps")
    s.traffic.legit_rate_mean_bps = parse_double(key, value);
  else if (key == "legit_rate_std_bps")
    s.traffic.legit_rate_std_bps = parse_double(key, value);
  else if (key == "malicious_rate_bps")
    s.traffic.malicious_rate_bps = parse_double(key, value);
  else if (key == "arrivals_per_cycle")
    s.traffic.arrivals_per_cycle = parse_int<std::uint32_t>(key, value);
  else if (key == "arrival_window_first")
    s.traffic.arrival_window_first = parse_int<std::uint32_t>(key, value);
  else if (key == "arrival_window_last")
    s.traffic.arrival_window_last = parse_int<std::uint32_t>(key, value);
  else if (key == "n_cycles")
    s.n_cycles = parse_int<std::uint32_t>(key, value);
  else if (key == "n_iterations")
    s.n_iterations = parse_int<std::uint32_t>(key, value);
  else if (key == "base_seed")
    s.base_seed = parse_int<std::uint64_t>(key, value);
  else
    throw std::invalid_argument("config: unknown key: " + key);
}

void apply_config(Scenario& scenario, std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = line;
    if (const auto hash = sv.find('#'); hash != std::string_view::npos)
      sv = sv.substr(0, hash);
    sv = trim(sv);
    if (sv.empty()) continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not key = value");
    const std::string key{trim(sv.substr(0, eq))};
    const std::string value{trim(sv.substr(eq + 1))};
    if (key.empty() || value.empty())
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " has an empty key or value");
    apply_config_entry(scenario, key, value);
  }
}

void apply_config_file(Scenario& scenario, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  apply_config(scenario, in);
}

}  // namespace flowshuffle
