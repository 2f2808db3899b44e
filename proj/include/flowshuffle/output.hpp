#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "flowshuffle/experiment.hpp"
#include "flowshuffle/theory.hpp"

namespace flowshuffle {

// CSV emitters. Column sets are part of the tool's contract; doubles are
// rendered with %.6g, counters as plain integers.

// cycle,mean_detected,std_detected,mean_nonescaped,std_nonescaped,
// mean_escaped,std_escaped,mean_processed_cum,std_processed_cum,
// false_pos_total
void write_simulate_csv(std::ostream& out, const RunStatistics& stats);

// cycle,p_c,E_c,V_c,U_c,N_F_c
void write_theory_csv(std::ostream& out, const TheoryTrace& trace);

// cycle then sim/std/theory/dev/within per compared metric
void write_compare_csv(std::ostream& out, const ComparisonReport& report);

// n_queues,mean_processed,std_processed
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points);

// One-line human summary of a comparison, for stdout.
std::string compare_summary(const ComparisonReport& report);

// %.6g rendering used by every writer, exposed for tests.
std::string format_value(double v);

// Emits a standalone matplotlib script that plots the named CSV. kind is one
// of "simulate", "theory", "compare", "sweep"; focus picks the highlighted
// series for simulate plots ("detected", "non_escaped", "combined",
// "processed").
std::string plot_script(const std::string& csv_filename,
                        const std::string& kind, const std::string& focus);

}  // namespace flowshuffle
