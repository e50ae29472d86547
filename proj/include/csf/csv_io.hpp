#pragma once

#include "csf/grid.hpp"
#include "csf/stepper.hpp"

#include <string>
#include <utility>
#include <vector>

namespace csf {

/// %.17g rendering used for all emitted numbers (bit-reproducible round trip).
std::string format_number(double v);

const char* to_string(Outcome o);

/// Writes one long-format CSV (header t,z,value) per field: u.csv, eta.csv,
/// zeta.csv, P.csv, A.csv. Creates the directory if needed.
void emit_csv(const Trajectory& traj, const Grid& grid, const std::string& dir);

/// Plain key = value report, one entry per line, in the given order.
void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& entries);

/// The outcome/event portion of a run report.
std::vector<std::pair<std::string, std::string>>
trajectory_report_entries(const Trajectory& traj);

} // namespace csf
