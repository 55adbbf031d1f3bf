#pragma once

#include <string>

#include "atomrec/experiments.hpp"
#include "atomrec/geometry.hpp"
#include "atomrec/solvers.hpp"
#include "atomrec/types.hpp"

namespace atomrec {

// 17 significant digits: round-trips IEEE-754 doubles exactly.
std::string format_double(double v);

// Problem file: {"n", "p", "phi", "y", "set", "set_params"?, "delta"?,
// "x_true"?}. Parse errors name the offending key.
Problem read_problem_json(const std::string& path);
void write_problem_json(const std::string& path, const Problem& problem);

std::string solve_report_to_json(const SolveReport& report);
std::string width_estimate_to_json(const WidthEstimate& estimate);

// Header: n,trials,successes,success_rate,mean_rel_error,mean_seconds
void write_phase_csv(const std::string& path, const PhaseResult& result);
std::string phase_csv_string(const PhaseResult& result);
// Config echo next to the CSV; extra_note lands in a "notes" field.
void write_phase_sidecar(const std::string& path, const PhaseResult& result,
                         const std::string& extra_note = "");

}  // namespace atomrec
