// Command line front end: simulate, theory, compare, sweep.
//
// Parameter precedence, lowest to highest: preset, config file, flags.
// Exit codes: 0 success, 1 I/O failure, 2 bad usage or invalid parameters.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "flowshuffle/config_file.hpp"
#include "flowshuffle/experiment.hpp"
#include "flowshuffle/output.hpp"
#include "flowshuffle/presets.hpp"

namespace fs = flowshuffle;

namespace {

struct Options {
  std::string preset;
  std::string config;
  std::string queues;  // single count, or first..last for sweep
  std::optional<std::uint32_t> flows;
  std::optional<double> rho;
  std::optional<std::uint32_t> cycles;
  std::optional<std::uint32_t> iterations;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool emit_plot = false;
};

struct QueueRange {
  std::uint32_t first = 0;
  std::uint32_t last = 0;
  bool is_range = false;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

QueueRange parse_queues(const std::string& text) {
  QueueRange range;
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      range.first = range.last = static_cast<std::uint32_t>(std::stoul(text));
    } else {
      range.first =
          static_cast<std::uint32_t>(std::stoul(text.substr(0, dots)));
      range.last =
          static_cast<std::uint32_t>(std::stoul(text.substr(dots + 2)));
      range.is_range = true;
    }
  } catch (const std::exception&) {
    throw UsageError("--queues expects a count or first..last, got: " + text);
  }
  if (range.first > range.last)
    throw UsageError("--queues range is inverted: " + text);
  return range;
}

const fs::Preset* resolve_preset(const std::string& name) {
  if (name.empty()) return nullptr;
  const fs::Preset* preset = fs::find_preset(name);
  if (!preset)
    throw UsageError("unknown preset: " + name +
                     " (available: " + fs::preset_names() + ")");
  return preset;
}

// Layered scenario: preset, then config file, then flags. Queue flags are
// applied by the caller because sweep interprets them as a range.
fs::Scenario build_scenario(const Options& opts, const fs::Preset* preset) {
  fs::Scenario scenario = preset ? preset->scenario : fs::Scenario{};
  if (!opts.config.empty()) fs::apply_config_file(scenario, opts.config);
  if (opts.flows) scenario.traffic.n_flows_initial = *opts.flows;
  if (opts.rho) scenario.traffic.malicious_ratio = *opts.rho;
  if (opts.cycles) scenario.n_cycles = *opts.cycles;
  if (opts.iterations) scenario.n_iterations = *opts.iterations;
  if (opts.seed) scenario.base_seed = *opts.seed;
  return scenario;
}

// Streams CSV to --out or stdout. File problems map to exit code 1 via
// std::ios_base::failure.
template <typename WriteFn>
void deliver_csv(const Options& opts, WriteFn write) {
  if (opts.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(opts.out);
  if (!file)
    throw std::ios_base::failure("cannot open output file: " + opts.out);
  write(file);
  file.flush();
  if (!file)
    throw std::ios_base::failure("failed while writing: " + opts.out);
  std::cerr << "wrote " << opts.out << "\n";
}

void maybe_emit_plot(const Options& opts, const std::string& kind,
                     const std::string& focus) {
  if (!opts.emit_plot) return;
  if (opts.out.empty())
    throw UsageError("--emit-plot needs --out so the script has a CSV to read");
  std::string path = opts.out;
  if (const auto dot = path.rfind('.'); dot != std::string::npos)
    path.resize(dot);
  path += "_plot.py";
  std::ofstream file(path);
  if (!file) throw std::ios_base::failure("cannot open plot script: " + path);
  file << fs::plot_script(opts.out, kind, focus);
  file.flush();
  if (!file) throw std::ios_base::failure("failed while writing: " + path);
  std::cerr << "wrote " << path << "\n";
}

std::string plot_focus(const fs::Preset* preset) {
  return preset ? std::string(preset->plot_focus) : "detected";
}

int cmd_simulate(const Options& opts) {
  const fs::Preset* preset = resolve_preset(opts.preset);
  if (preset && preset->sweep)
    throw UsageError("preset " + std::string(preset->name) +
                     " is a sweep; use the sweep subcommand");
  fs::Scenario scenario = build_scenario(opts, preset);
  if (!opts.queues.empty()) {
    const QueueRange range = parse_queues(opts.queues);
    if (range.is_range)
      throw UsageError("simulate takes a single --queues count");
    scenario.node.n_queues = range.first;
  }
  scenario.validate();
  const fs::RunStatistics stats = fs::run_scenario(scenario);
  deliver_csv(opts, [&](std::ostream& out) { write_simulate_csv(out, stats); });
  maybe_emit_plot(opts, "simulate", plot_focus(preset));
  return 0;
}

int cmd_theory(const Options& opts) {
  const fs::Preset* preset = resolve_preset(opts.preset);
  if (preset && preset->sweep)
    throw UsageError("preset " + std::string(preset->name) +
                     " is a sweep; use the sweep subcommand");
  fs::Scenario scenario = build_scenario(opts, preset);
  if (!opts.queues.empty()) {
    const QueueRange range = parse_queues(opts.queues);
    if (range.is_range) throw UsageError("theory takes a single --queues count");
    scenario.node.n_queues = range.first;
  }
  fs::TheoryParams params = fs::theory_params_for(scenario);
  params.validate();
  const fs::TheoryTrace trace = fs::run_recursion(params);
  deliver_csv(opts, [&](std::ostream& out) { write_theory_csv(out, trace); });
  maybe_emit_plot(opts, "theory", "");
  return 0;
}

int cmd_compare(const Options& opts) {
  const fs::Preset* preset = resolve_preset(opts.preset);
  if (preset && preset->sweep)
    throw UsageError("preset " + std::string(preset->name) +
                     " is a sweep; use the sweep subcommand");
  fs::Scenario scenario = build_scenario(opts, preset);
  if (!opts.queues.empty()) {
    const QueueRange range = parse_queues(opts.queues);
    if (range.is_range)
      throw UsageError("compare takes a single --queues count");
    scenario.node.n_queues = range.first;
  }
  scenario.validate();
  const fs::RunStatistics stats = fs::run_scenario(scenario);
  const fs::TheoryTrace trace = fs::run_recursion(fs::theory_params_for(scenario));
  const fs::ComparisonReport report = fs::compare_with_theory(stats, trace);
  deliver_csv(opts, [&](std::ostream& out) { write_compare_csv(out, report); });
  std::cout << fs::compare_summary(report) << "\n";
  maybe_emit_plot(opts, "compare", "");
  return 0;
}

int cmd_sweep(const Options& opts) {
  const fs::Preset* preset = resolve_preset(opts.preset);
  fs::Scenario scenario = build_scenario(opts, preset);

  std::uint32_t first = 0, last = 0;
  if (preset && preset->sweep) {
    first = preset->sweep_queues_first;
    last = preset->sweep_queues_last;
  }
  if (!opts.queues.empty()) {
    const QueueRange range = parse_queues(opts.queues);
    first = range.first;
    last = range.last;
  }
  if (first == 0)
    throw UsageError("sweep needs a queue range: --queues first..last");

  const std::vector<fs::SweepPoint> points =
      fs::run_sweep(scenario, first, last);
  deliver_csv(opts, [&](std::ostream& out) { write_sweep_csv(out, points); });
  maybe_emit_plot(opts, "sweep", "");
  return 0;
}

void add_shared_options(CLI::App* cmd, Options& opts, bool queue_range) {
  cmd->add_option("--preset", opts.preset,
                  "named configuration (" + fs::preset_names() + ")");
  cmd->add_option("--config", opts.config, "key = value overrides file");
  cmd->add_option("--queues", opts.queues,
                  queue_range ? "queue count or range first..last"
                              : "queue count");
  cmd->add_option("--flows", opts.flows, "initial flow count");
  cmd->add_option("--rho", opts.rho, "malicious fraction of initial flows");
  cmd->add_option("--cycles", opts.cycles, "mitigation cycles per iteration");
  cmd->add_option("--iterations", opts.iterations, "Monte Carlo iterations");
  cmd->add_option("--seed", opts.seed, "base seed for iteration streams");
  cmd->add_option("--out", opts.out, "write CSV here instead of stdout");
  cmd->add_flag("--emit-plot", opts.emit_plot,
                "also write a matplotlib script next to --out");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Queue-shuffle flood mitigation: Monte Carlo simulator and analytical "
      "model"};
  app.require_subcommand(1);

  Options opts;
  CLI::App* simulate =
      app.add_subcommand("simulate", "run the simulator, emit per-cycle stats");
  CLI::App* theory =
      app.add_subcommand("theory", "evaluate the analytical recursion");
  CLI::App* compare =
      app.add_subcommand("compare", "run both and report deviations");
  CLI::App* sweep =
      app.add_subcommand("sweep", "simulate across a range of queue counts");
  add_shared_options(simulate, opts, false);
  add_shared_options(theory, opts, false);
  add_shared_options(compare, opts, false);
  add_shared_options(sweep, opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opts);
    if (theory->parsed()) return cmd_theory(opts);
    if (compare->parsed()) return cmd_compare(opts);
    return cmd_sweep(opts);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
