#include "spotvol/optim.hpp"

#include <cmath>

namespace spotvol::optim {

namespace {
constexpr double kPenalty = 1e10;
}

Eigen::VectorXd numerical_gradient(const Objective& f, const Eigen::VectorXd& x, double rel_step) {
    const auto n = x.size();
    Eigen::VectorXd g(n);
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double h = rel_step * std::max(std::fabs(x(i)), 0.1);
        xp(i) = x(i) + h;
        const double fp = f(xp);
        xp(i) = x(i) - h;
        const double fm = f(xp);
        xp(i) = x(i);
        g(i) = (fp - fm) / (2.0 * h);
    }
    return g;
}

Result bfgs_minimize(const Objective& f, const Eigen::VectorXd& x0, const Options& opts) {
    const auto n = x0.size();
    Result res;
    res.x = x0;
    res.f = f(x0);
    if (!std::isfinite(res.f) || res.f >= kPenalty) {
        res.reason = "infeasible starting point";
        return res;
    }

    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);  // inverse-Hessian approximation
    Eigen::VectorXd g = numerical_gradient(f, res.x, opts.grad_step);

    for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
        if (g.lpNorm<Eigen::Infinity>() < opts.g_tol) {
            res.converged = true;
            res.reason = "gradient norm below tolerance";
            return res;
        }
        Eigen::VectorXd dir = -(H * g);
        double slope = g.dot(dir);
        if (!(slope < 0.0)) {
            // Lost positive definiteness; restart from steepest descent.
            H.setIdentity();
            dir = -g;
            slope = g.dot(dir);
            if (!(slope < 0.0)) {
                res.converged = true;
                res.reason = "zero gradient";
                return res;
            }
        }

        // Armijo backtracking.
        double step = 1.0;
        double f_new = res.f;
        Eigen::VectorXd x_new = res.x;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            x_new = res.x + step * dir;
            f_new = f(x_new);
            if (std::isfinite(f_new) && f_new < kPenalty &&
                f_new <= res.f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            res.converged = true;
            res.reason = "line search could not improve";
            return res;
        }

        const Eigen::VectorXd g_new = numerical_gradient(f, x_new, opts.grad_step);
        const Eigen::VectorXd s = x_new - res.x;
        const Eigen::VectorXd yv = g_new - g;
        const double improvement = res.f - f_new;
        res.x = x_new;
        res.f = f_new;
        g = g_new;

        const double sy = s.dot(yv);
        if (sy > 1e-12 * s.norm() * yv.norm()) {
            const Eigen::VectorXd Hy = H * yv;
            const double yHy = yv.dot(Hy);
            // BFGS inverse update
            H += ((sy + yHy) / (sy * sy)) * (s * s.transpose()) -
                 (Hy * s.transpose() + s * Hy.transpose()) / sy;
        }

        if (improvement < opts.f_tol * (std::fabs(res.f) + 1e-12)) {
            res.converged = true;
            res.reason = "objective improvement below tolerance";
            ++res.iterations;
            return res;
        }
    }
    res.reason = "iteration budget exhausted";
    return res;
}

}  // namespace spotvol::optim
