#pragma once

#include <Eigen/Dense>

#include <vector>

namespace uavtwin::radar {

/// Minimum-cost assignment of rows to columns for a rectangular cost matrix
/// (Kuhn-Munkres with potentials, O(n^3)). Returns, per row, the assigned
/// column or -1. Entries that are +inf are forbidden and never assigned.
std::vector<int> hungarian(const Eigen::MatrixXd& cost);

}  // namespace uavtwin::radar
