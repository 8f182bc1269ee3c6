#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace spotvol::optim {

struct Options {
    int max_iterations = 500;
    double f_tol = 1e-8;    // relative objective improvement
    double g_tol = 1e-5;    // gradient infinity norm
    double grad_step = 1e-6;
};

struct Result {
    Eigen::VectorXd x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string reason;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

// Central-difference gradient with per-coordinate relative steps.
Eigen::VectorXd numerical_gradient(const Objective& f, const Eigen::VectorXd& x, double rel_step);

// BFGS with Armijo backtracking. Objective values of 1e10 and above act as an
// infeasibility penalty: the line search retreats from them and the curvature
// update is skipped. Descent is monotone by construction.
Result bfgs_minimize(const Objective& f, const Eigen::VectorXd& x0, const Options& opts = {});

}  // namespace spotvol::optim
