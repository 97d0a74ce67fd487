#include "uavtwin/common/least_squares.hpp"

#include <cmath>

namespace uavtwin {

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIterations: return "max_iterations";
        case SolveStatus::RankDeficient: return "rank_deficient";
    }
    return "unknown";
}

namespace {

bool rank_deficient(const Eigen::MatrixXd& jacobian, double tolerance) {
    if (jacobian.rows() < jacobian.cols()) return true;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || !(sv(0) > 0.0)) return true;
    return sv(sv.size() - 1) / sv(0) < tolerance;
}

}  // namespace

LsqResult damped_gauss_newton(const ResidualFunction& residual_fn, Eigen::VectorXd initial,
                              const LsqOptions& options) {
    LsqResult result;
    result.params = std::move(initial);

    Eigen::VectorXd residuals;
    Eigen::MatrixXd jacobian;
    residual_fn(result.params, residuals, jacobian);
    result.cost = residuals.squaredNorm();
    result.accepted_costs.push_back(result.cost);

    double lambda = options.initial_damping;
    Eigen::VectorXd trial_residuals;
    Eigen::MatrixXd trial_jacobian;

    while (result.iterations < options.max_iterations) {
        if (rank_deficient(jacobian, options.rank_tolerance)) {
            result.status = SolveStatus::RankDeficient;
            return result;
        }
        if (result.cost == 0.0) {
            result.status = SolveStatus::Converged;
            return result;
        }

        const Eigen::MatrixXd normal = jacobian.transpose() * jacobian;
        const Eigen::VectorXd gradient = jacobian.transpose() * residuals;
        Eigen::MatrixXd damped = normal;
        damped.diagonal() += lambda * normal.diagonal();
        const Eigen::VectorXd step = damped.ldlt().solve(-gradient);
        ++result.iterations;

        const Eigen::VectorXd trial = result.params + step;
        residual_fn(trial, trial_residuals, trial_jacobian);
        const double trial_cost = trial_residuals.squaredNorm();

        if (std::isfinite(trial_cost) && trial_cost <= result.cost) {
            result.params = trial;
            result.cost = trial_cost;
            residuals.swap(trial_residuals);
            jacobian.swap(trial_jacobian);
            result.accepted_costs.push_back(result.cost);
            lambda = std::max(lambda / 10.0, 1e-12);
            if (step.norm() < options.step_tolerance) {
                result.status = SolveStatus::Converged;
                return result;
            }
        } else {
            lambda *= 10.0;
            // Damping has shrunk the step below tolerance without progress:
            // the iterate is a local minimum to working precision.
            if (step.norm() < options.step_tolerance * 1e-3 || lambda > 1e12) {
                result.status = SolveStatus::Converged;
                return result;
            }
        }
    }
    result.status = SolveStatus::MaxIterations;
    return result;
}

}  // namespace uavtwin
