#include "flowshuffle/output.hpp"

#include <cstdio>

namespace flowshuffle {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void write_simulate_csv(std::ostream& out, const RunStatistics& stats) {
  out << "cycle,mean_detected,std_detected,mean_nonescaped,std_nonescaped,"
         "mean_escaped,std_escaped,mean_processed_cum,std_processed_cum,"
         "false_pos_total\n";
  for (std::uint32_t c = 0; c < stats.n_cycles; ++c) {
    out << c << ',' << format_value(stats.detected_total.mean[c]) << ','
        << format_value(stats.detected_total.stddev[c]) << ','
        << format_value(stats.non_escaped.mean[c]) << ','
        << format_value(stats.non_escaped.stddev[c]) << ','
        << format_value(stats.escaped_total.mean[c]) << ','
        << format_value(stats.escaped_total.stddev[c]) << ','
        << format_value(stats.processed_cumulative.mean[c]) << ','
        << format_value(stats.processed_cumulative.stddev[c]) << ','
        << stats.false_positives_per_cycle[c] << '\n';
  }
}

void write_theory_csv(std::ostream& out, const TheoryTrace& trace) {
  out << "cycle,p_c,E_c,V_c,U_c,N_F_c\n";
  for (std::size_t c = 0; c < trace.size(); ++c) {
    const TheoryCycle& row = trace[c];
    out << c << ',' << format_value(row.p_isolate) << ','
        << format_value(row.expected_detected) << ','
        << format_value(row.expected_escaped) << ','
        << format_value(row.undetected) << ','
        << format_value(row.n_nonescaped) << '\n';
  }
}

void write_compare_csv(std::ostream& out, const ComparisonReport& report) {
  out << "cycle";
  for (const MetricComparison& m : report.metrics) {
    out << ",sim_" << m.metric << ",std_" << m.metric << ",theory_" << m.metric
        << ",dev_" << m.metric << ",within_" << m.metric;
  }
  out << '\n';
  for (std::uint32_t c = 0; c < report.n_cycles; ++c) {
    out << c;
    for (const MetricComparison& m : report.metrics) {
      out << ',' << format_value(m.sim_mean[c]) << ','
          << format_value(m.sim_std[c]) << ',' << format_value(m.theory[c])
          << ',' << format_value(m.abs_dev[c]) << ','
          << (m.within_band[c] ? 1 : 0);
    }
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points) {
  out << "n_queues,mean_processed,std_processed\n";
  for (const SweepPoint& p : points) {
    out << p.n_queues << ',' << format_value(p.mean_processed) << ','
        << format_value(p.std_processed) << '\n';
  }
}

std::string compare_summary(const ComparisonReport& report) {
  std::string line = "compare: max_abs_dev=" + format_value(report.max_abs_dev) +
                     " (metric=" + report.max_dev_metric +
                     ", cycle=" + std::to_string(report.max_dev_cycle) +
                     ") within_band_fraction=" +
                     format_value(report.overall_within_fraction);
  for (const MetricComparison& m : report.metrics)
    line += " " + m.metric + "=" + format_value(m.within_fraction);
  return line;
}

namespace {

const char* kPlotPreamble =
    "#!/usr/bin/env python3\n"
    "# Auto-generated plotting companion. Requires matplotlib.\n"
    "import csv\n"
    "import matplotlib\n"
    "matplotlib.use('Agg')\n"
    "import matplotlib.pyplot as plt\n"
    "\n"
    "rows = []\n"
    "with open(CSV_FILE, newline='') as fh:\n"
    "    for row in csv.DictReader(fh):\n"
    "        rows.append({k: float(v) for k, v in row.items()})\n"
    "\n"
    "def col(name):\n"
    "    return [r[name] for r in rows]\n"
    "\n";

}  // namespace

std::string plot_script(const std::string& csv_filename,
                        const std::string& kind, const std::string& focus) {
  std::string script = "CSV_FILE = '" + csv_filename + "'\n";
  script += kPlotPreamble;

  if (kind == "simulate") {
    script +=
        "cycles = col('cycle')\n"
        "fig, ax = plt.subplots(figsize=(7, 4.5))\n";
    if (focus == "non_escaped") {
      script +=
          "ax.errorbar(cycles, col('mean_nonescaped'), yerr=col('std_nonescaped'),\n"
          "            marker='o', capsize=2, label='non-escaped flows')\n";
    } else if (focus == "combined") {
      script +=
          "ax.errorbar(cycles, col('mean_nonescaped'), yerr=col('std_nonescaped'),\n"
          "            marker='o', capsize=2, label='non-escaped flows')\n"
          "ax.errorbar(cycles, col('mean_detected'), yerr=col('std_detected'),\n"
          "            marker='s', capsize=2, label='detected per cycle')\n";
    } else if (focus == "processed") {
      script +=
          "ax.errorbar(cycles, col('mean_processed_cum'), yerr=col('std_processed_cum'),\n"
          "            marker='o', capsize=2, label='processed (cumulative)')\n";
    } else {
      script +=
          "ax.errorbar(cycles, col('mean_detected'), yerr=col('std_detected'),\n"
          "            marker='o', capsize=2, label='detected per cycle')\n";
    }
    script +=
        "ax.set_xlabel('cycle')\n"
        "ax.set_ylabel('flows')\n"
        "ax.legend()\n"
        "ax.grid(alpha=0.3)\n";
  } else if (kind == "theory") {
    script +=
        "cycles = col('cycle')\n"
        "fig, ax = plt.subplots(figsize=(7, 4.5))\n"
        "ax.plot(cycles, col('E_c'), marker='o', label='E_c (expected detected)')\n"
        "ax.plot(cycles, col('V_c'), marker='s', label='V_c (expected escaped)')\n"
        "ax.plot(cycles, col('U_c'), marker='^', label='U_c (undetected)')\n"
        "ax.plot(cycles, col('N_F_c'), marker='d', label='N_F_c (non-escaped)')\n"
        "ax.set_xlabel('cycle')\n"
        "ax.set_ylabel('flows')\n"
        "ax.legend()\n"
        "ax.grid(alpha=0.3)\n";
  } else if (kind == "compare") {
    script +=
        "cycles = col('cycle')\n"
        "metrics = ['detected', 'non_escaped', 'escaped']\n"
        "fig, axes = plt.subplots(1, 3, figsize=(15, 4.5))\n"
        "for ax, m in zip(axes, metrics):\n"
        "    ax.errorbar(cycles, col('sim_' + m), yerr=col('std_' + m),\n"
        "                marker='o', capsize=2, label='simulation')\n"
        "    ax.plot(cycles, col('theory_' + m), linestyle='--', label='theory')\n"
        "    ax.set_title(m)\n"
        "    ax.set_xlabel('cycle')\n"
        "    ax.legend()\n"
        "    ax.grid(alpha=0.3)\n";
  } else {  // sweep
    script +=
        "queues = col('n_queues')\n"
        "fig, ax = plt.subplots(figsize=(7, 4.5))\n"
        "ax.errorbar(queues, col('mean_processed'), yerr=col('std_processed'),\n"
        "            marker='o', capsize=3)\n"
        "ax.set_xlabel('number of queues')\n"
        "ax.set_ylabel('processed flows after the run')\n"
        "ax.grid(alpha=0.3)\n";
  }

  script +=
      "out = CSV_FILE.rsplit('.', 1)[0] + '.png'\n"
      "fig.tight_layout()\n"
      "fig.savefig(out, dpi=150)\n"
      "print('wrote', out)\n";
  return script;
}

}  // namespace flowshuffle
