#pragma once

#include <string>
#include <string_view>

#include "qcluster/dynamics.hpp"
#include "qcluster/sim.hpp"

namespace qcluster {

/// Dynamics file: "d <d>", then d rows of A, then d rows of F
/// (whitespace-separated). Blank lines and '#' comments are skipped.
AgentDynamics parse_dynamics(std::string_view text);
std::string render_dynamics(const AgentDynamics& dyn);

/// Trajectory CSV: header "t,x_1_1,...,x_N_d" (agent-major), one row per
/// record, 9 significant digits.
std::string render_trajectory_csv(const Trajectory& tr);
Trajectory parse_trajectory_csv(std::string_view csv);

/// Rectangular numeric CSV (no header), e.g. an N x d initial-state matrix.
Eigen::MatrixXd parse_matrix_csv(std::string_view csv);

/// Reads a whole file; throws InputError when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace qcluster
