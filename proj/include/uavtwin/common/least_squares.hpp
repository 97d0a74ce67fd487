#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace uavtwin {

enum class SolveStatus {
    Converged,      // accepted step shorter than the tolerance
    MaxIterations,  // gave up; parameters hold the last accepted iterate
    RankDeficient,  // Jacobian lost rank; parameters hold the last iterate
};

const char* to_string(SolveStatus status);

struct LsqOptions {
    int max_iterations = 100;
    double step_tolerance = 1e-3;    // in parameter units (metres for positions)
    double initial_damping = 1e-3;   // Levenberg lambda, relative to diag(J^T J)
    double rank_tolerance = 1e-10;   // smallest/largest singular value of J
};

struct LsqResult {
    Eigen::VectorXd params;
    double cost = 0.0;               // sum of squared residuals at params
    int iterations = 0;              // trial steps taken (accepted + rejected)
    SolveStatus status = SolveStatus::MaxIterations;
    std::vector<double> accepted_costs;  // cost after every accepted step, starting with the initial cost
};

/// Fills residuals r(p) and Jacobian dr/dp for the given parameters.
using ResidualFunction =
    std::function<void(const Eigen::VectorXd& params, Eigen::VectorXd& residuals,
                       Eigen::MatrixXd& jacobian)>;

/// Levenberg-damped Gauss-Newton. Steps that do not lower the cost are
/// rejected and retried with heavier damping, so accepted_costs is
/// non-increasing by construction.
LsqResult damped_gauss_newton(const ResidualFunction& residual_fn, Eigen::VectorXd initial,
                              const LsqOptions& options = {});

}  // namespace uavtwin
