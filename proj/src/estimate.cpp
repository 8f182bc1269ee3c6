#include "spotvol/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spotvol/math.hpp"
#include "spotvol/optim.hpp"

namespace spotvol {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Mapping between the natural coefficient vector and the unconstrained
// optimization space. Order matches the report table: C, betas, ARs, MAs,
// K, ARCH, GARCH, leverage, variance regressors, NU.
struct Packing {
    const MeanSpec& mean;
    const VarianceSpec& var;
    bool estimate_nu;

    bool positives() const { return var.family != VarianceFamily::Egarch; }

    int size() const {
        return mean.param_count() + var.param_count() + (estimate_nu ? 1 : 0);
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        if (mean.constant) out.push_back("C");
        for (const auto& r : mean.regressors) out.push_back(r.name);
        for (int i = 1; i <= mean.ar; ++i) out.push_back("AR(" + std::to_string(i) + ")");
        for (int j = 1; j <= mean.ma; ++j) out.push_back("MA(" + std::to_string(j) + ")");
        out.push_back("K");
        for (int j = 1; j <= var.q; ++j) out.push_back("ARCH(" + std::to_string(j) + ")");
        for (int i = 1; i <= var.p; ++i) out.push_back("GARCH(" + std::to_string(i) + ")");
        if (var.has_leverage()) {
            for (int j = 1; j <= var.q; ++j) out.push_back("LEV(" + std::to_string(j) + ")");
        }
        for (const auto& r : var.regressors) out.push_back("V:" + r.name);
        if (estimate_nu) out.push_back("NU");
        return out;
    }

    // natural -> flat natural vector
    Eigen::VectorXd flatten(const ParamVector& p) const {
        Eigen::VectorXd v(size());
        int i = 0;
        if (mean.constant) v(i++) = p.c;
        for (double b : p.beta) v(i++) = b;
        for (double a : p.ar) v(i++) = a;
        for (double m : p.ma) v(i++) = m;
        v(i++) = p.k;
        for (double a : p.arch) v(i++) = a;
        for (double g : p.garch) v(i++) = g;
        if (var.has_leverage()) {
            for (double l : p.leverage) v(i++) = l;
        }
        for (double g : p.vreg) v(i++) = g;
        if (estimate_nu) v(i++) = p.nu.value_or(8.0);
        return v;
    }

    ParamVector unflatten(const Eigen::VectorXd& v) const {
        ParamVector p;
        int i = 0;
        if (mean.constant) p.c = v(i++);
        p.beta.resize(mean.regressors.size());
        for (auto& b : p.beta) b = v(i++);
        p.ar.resize(mean.ar);
        for (auto& a : p.ar) a = v(i++);
        p.ma.resize(mean.ma);
        for (auto& m : p.ma) m = v(i++);
        p.k = v(i++);
        p.arch.resize(var.q);
        for (auto& a : p.arch) a = v(i++);
        p.garch.resize(var.p);
        for (auto& g : p.garch) g = v(i++);
        if (var.has_leverage()) {
            p.leverage.resize(var.q);
            for (auto& l : p.leverage) l = v(i++);
        }
        p.vreg.resize(var.regressors.size());
        for (auto& g : p.vreg) g = v(i++);
        if (estimate_nu) p.nu = v(i++);
        return p;
    }

    // natural -> unconstrained
    Eigen::VectorXd to_unconstrained(const ParamVector& p) const {
        Eigen::VectorXd v = flatten(p);
        if (positives()) {
            int i = mean.param_count();
            v(i) = std::log(std::max(p.k, 1e-12));  // K
            ++i;
            for (int j = 0; j < var.q; ++j, ++i) v(i) = std::log(std::max(p.arch[j], 1e-8));
            for (int j = 0; j < var.p; ++j, ++i) v(i) = std::log(std::max(p.garch[j], 1e-8));
            if (var.family == VarianceFamily::Gjr) {
                // L_j enters through ln(A_j + L_j) so the pair constraint holds.
                for (int j = 0; j < var.q; ++j, ++i) {
                    v(i) = std::log(std::max(p.arch[j] + p.leverage[j], 1e-8));
                }
            }
        }
        if (estimate_nu) {
            v(size() - 1) = std::log(std::max(p.nu.value_or(8.0) - 2.0, 1e-6));
        }
        return v;
    }

    ParamVector from_unconstrained(const Eigen::VectorXd& u) const {
        Eigen::VectorXd v = u;
        if (positives()) {
            int i = mean.param_count();
            v(i) = std::exp(u(i));  // K
            ++i;
            const int arch_at = i;
            for (int j = 0; j < var.q; ++j, ++i) v(i) = std::exp(u(i));
            for (int j = 0; j < var.p; ++j, ++i) v(i) = std::exp(u(i));
            if (var.family == VarianceFamily::Gjr) {
                for (int j = 0; j < var.q; ++j, ++i) v(i) = std::exp(u(i)) - v(arch_at + j);
            }
        }
        if (estimate_nu) {
            const int i = size() - 1;
            v(i) = 2.0 + std::exp(u(i));
        }
        return unflatten(v);
    }
};

// OLS warm start for the mean equation; theta starts at zero.
ParamVector starting_values(const TimeSeries& y, const MeanSpec& mean, const VarianceSpec& var,
                            const InnovationDist& dist) {
    const auto& v = y.values();
    const int n = static_cast<int>(v.size());
    const int start = mean.ar;  // rows start where all AR lags exist
    const int rows = n - start;
    const int cols = mean.param_count() - mean.ma;

    ParamVector p;
    p.ar.assign(mean.ar, 0.0);
    p.ma.assign(mean.ma, 0.0);
    p.beta.assign(mean.regressors.size(), 0.0);
    p.vreg.assign(var.regressors.size(), 0.0);

    double resid_var = 0.0;
    bool ols_ok = false;
    if (cols > 0 && rows > cols + 2) {
        try {
            Eigen::MatrixXd X(rows, cols);
            Eigen::VectorXd yy(rows);
            for (int r = 0; r < rows; ++r) {
                const int t = start + r;
                yy(r) = v[t];
                int c = 0;
                if (mean.constant) X(r, c++) = 1.0;
                for (int i = 1; i <= mean.ar; ++i) X(r, c++) = v[t - i];
                for (const auto& reg : mean.regressors) X(r, c++) = reg.values[t];
            }
            const math::OlsFit ols_fit = math::ols(X, yy);
            int c = 0;
            if (mean.constant) p.c = ols_fit.coef(c++);
            for (int i = 0; i < mean.ar; ++i) p.ar[i] = ols_fit.coef(c++);
            for (std::size_t i = 0; i < mean.regressors.size(); ++i) p.beta[i] = ols_fit.coef(c++);
            resid_var = ols_fit.ssr / rows;
            ols_ok = true;
        } catch (const Error&) {
            ols_ok = false;
        }
    }
    if (!ols_ok) {
        double mu = 0.0;
        if (mean.constant) {
            mu = std::accumulate(v.begin(), v.end(), 0.0) / n;
            p.c = mu;
        }
        for (double x : v) resid_var += (x - mu) * (x - mu);
        resid_var /= n;
    }
    resid_var = std::max(resid_var, 1e-12);

    if (var.family == VarianceFamily::Egarch) {
        p.arch.assign(var.q, 0.1 / var.q);
        p.garch.assign(var.p, 0.8 / var.p);
        p.leverage.assign(var.q, 0.0);
        p.k = 0.2 * std::log(resid_var);  // (1 - sum G) * ln(target variance)
    } else {
        p.k = 0.1 * resid_var;
        p.arch.assign(var.q, 0.1 / var.q);
        p.garch.assign(var.p, 0.8 / var.p);
        if (var.family == VarianceFamily::Gjr) p.leverage.assign(var.q, 0.0);
    }
    if (dist.kind == InnovationDist::StudentT) p.nu = dist.nu > 2.0 ? dist.nu : 8.0;
    return p;
}

}  // namespace

Criteria information_criteria(double loglik, int k_params, int n) {
    if (k_params < 1) throw DomainError("information_criteria: k_params must be positive");
    if (n <= k_params) throw InsufficientData("information_criteria: n must exceed k_params");
    const double nn = static_cast<double>(n);
    Criteria c;
    c.aic = (-2.0 * loglik + 2.0 * k_params) / nn;
    c.bic = (-2.0 * loglik + k_params * std::log(nn)) / nn;
    c.hq = (-2.0 * loglik + 2.0 * k_params * std::log(std::log(nn))) / nn;
    return c;
}

FitResult fit(const TimeSeries& y, const MeanSpec& mean, const VarianceSpec& var,
              const InnovationDist& dist, const FitOptions& options) {
    if (y.has_missing()) throw DomainError("fit requires a complete series; impute first");
    const bool estimate_nu = dist.kind == InnovationDist::StudentT;
    const Packing packing{mean, var, estimate_nu};
    const int n_params = packing.size();
    const int n = static_cast<int>(y.size());
    if (n < 10 * n_params) {
        throw InsufficientData("fit: need at least 10 observations per parameter, have " +
                               std::to_string(n) + " for " + std::to_string(n_params));
    }
    for (const auto& r : mean.regressors) {
        if (r.values.size() != y.size()) {
            throw SpecMismatch("fit: mean regressor '" + r.name + "' not aligned to y");
        }
    }
    for (const auto& r : var.regressors) {
        if (r.values.size() != y.size()) {
            throw SpecMismatch("fit: variance regressor '" + r.name + "' not aligned to y");
        }
    }

    const ParamVector p0 = starting_values(y, mean, var, dist);
    const auto& yv = y.values();
    const auto objective = [&](const Eigen::VectorXd& u) {
        return detail::penalized_neg_loglik(packing.from_unconstrained(u), yv, mean, var, dist);
    };

    optim::Options oo;
    oo.max_iterations = options.max_iterations;
    oo.f_tol = options.loglik_tol;
    oo.g_tol = options.grad_tol;
    optim::Result opt = optim::bfgs_minimize(objective, packing.to_unconstrained(p0), oo);
    if (options.restarts > 0) {
        math::Rng rng(options.seed);
        for (int r = 0; r < options.restarts; ++r) {
            Eigen::VectorXd u0 = packing.to_unconstrained(p0);
            for (Eigen::Index i = 0; i < u0.size(); ++i) u0(i) += 0.1 * rng.normal();
            const optim::Result alt = optim::bfgs_minimize(objective, u0, oo);
            if (alt.converged && alt.f < opt.f) opt = alt;
        }
    }

    const ParamVector p_hat = packing.from_unconstrained(opt.x);
    const ResidualPath rp = mean_residuals(p_hat, y, mean);
    const std::size_t pre = static_cast<std::size_t>(rp.presample);

    std::vector<Date> est_dates(rp.eps.dates().begin() + pre, rp.eps.dates().end());
    std::vector<double> est_eps(rp.eps.values().begin() + pre, rp.eps.values().end());
    TimeSeries residuals(std::move(est_dates), std::move(est_eps), "resid(" + y.name() + ")");

    VarianceSpec var_est = var;
    for (auto& r : var_est.regressors) {
        r.values = std::vector<double>(r.values.begin() + pre, r.values.end());
    }
    VolPath variance = variance_path(p_hat, residuals, var_est, dist);

    FitResult result(std::move(residuals), std::move(variance));
    result.mean = mean;
    result.var = var;
    result.dist = dist;
    result.params = p_hat;
    result.presample = static_cast<int>(pre);
    result.n_obs = n - static_cast<int>(pre);
    result.n_params = n_params;
    result.converged = opt.converged;
    result.iterations = opt.iterations;
    result.loglik = -opt.f;

    const Criteria crit = information_criteria(result.loglik, n_params, result.n_obs);
    result.aic = crit.aic;
    result.bic = crit.bic;
    result.hq = crit.hq;

    // Standard errors from the numerical Hessian of the negative log
    // likelihood in the natural parameterization.
    const Eigen::VectorXd theta = packing.flatten(p_hat);
    const auto nll_natural = [&](const Eigen::VectorXd& t) {
        return detail::penalized_neg_loglik(packing.unflatten(t), yv, mean, var, dist);
    };
    Eigen::MatrixXd hess(n_params, n_params);
    {
        const double rel = options.hessian_step;
        Eigen::VectorXd h(n_params);
        for (int i = 0; i < n_params; ++i) h(i) = rel * (std::fabs(theta(i)) + 1e-3);
        const double f0 = nll_natural(theta);
        Eigen::VectorXd tp = theta;
        for (int i = 0; i < n_params; ++i) {
            for (int j = i; j < n_params; ++j) {
                double value;
                if (i == j) {
                    tp = theta;
                    tp(i) = theta(i) + h(i);
                    const double fpp = nll_natural(tp);
                    tp(i) = theta(i) - h(i);
                    const double fmm = nll_natural(tp);
                    value = (fpp - 2.0 * f0 + fmm) / (h(i) * h(i));
                } else {
                    tp = theta;
                    tp(i) += h(i);
                    tp(j) += h(j);
                    const double fpp = nll_natural(tp);
                    tp(j) -= 2.0 * h(j);
                    const double fpm = nll_natural(tp);
                    tp(i) -= 2.0 * h(i);
                    const double fmm = nll_natural(tp);
                    tp(j) += 2.0 * h(j);
                    const double fmp = nll_natural(tp);
                    value = (fpp - fpm - fmp + fmm) / (4.0 * h(i) * h(j));
                }
                hess(i, j) = value;
                hess(j, i) = value;
            }
        }
    }

    Eigen::VectorXd se = Eigen::VectorXd::Constant(n_params, kNaN);
    if (hess.allFinite()) {
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
        if (ldlt.info() == Eigen::Success) {
            const Eigen::MatrixXd cov =
                ldlt.solve(Eigen::MatrixXd::Identity(n_params, n_params));
            for (int i = 0; i < n_params; ++i) {
                const double var_i = cov(i, i);
                if (std::isfinite(var_i) && var_i > 0.0) se(i) = std::sqrt(var_i);
            }
        }
    }

    const std::vector<std::string> names = packing.names();
    result.table.resize(n_params);
    for (int i = 0; i < n_params; ++i) {
        ParamEstimate& e = result.table[i];
        e.name = names[i];
        e.value = theta(i);
        e.std_error = se(i);
        if (std::isfinite(se(i)) && se(i) > 0.0) {
            e.z_stat = theta(i) / se(i);
            e.p_value = 2.0 * (1.0 - math::norm_cdf(std::fabs(e.z_stat)));
        } else {
            e.z_stat = kNaN;
            e.p_value = kNaN;
        }
    }

    const Goodness good = goodness_of_fit(result, y);
    result.r_squared = good.r_squared;
    result.adj_r_squared = good.adj_r_squared;
    result.dw = good.dw;
    return result;
}

Goodness goodness_of_fit(const FitResult& fit, const TimeSeries& y) {
    const std::size_t pre = static_cast<std::size_t>(fit.presample);
    if (y.size() != fit.residuals.size() + pre) {
        throw SpecMismatch("goodness_of_fit: residuals not aligned with y");
    }
    const auto& e = fit.residuals.values();
    const auto& v = y.values();
    const std::size_t n = e.size();

    double mean_y = 0.0;
    for (std::size_t t = 0; t < n; ++t) mean_y += v[t + pre];
    mean_y /= static_cast<double>(n);
    double sst = 0.0, ssr = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        sst += (v[t + pre] - mean_y) * (v[t + pre] - mean_y);
        ssr += e[t] * e[t];
    }
    if (!(sst > 0.0)) throw ConstantSeries("goodness_of_fit: target series is constant");

    Goodness g;
    g.r_squared = 1.0 - ssr / sst;
    const int k_mean = fit.mean.param_count();
    const double nn = static_cast<double>(n);
    g.adj_r_squared = 1.0 - (1.0 - g.r_squared) * (nn - 1.0) / (nn - k_mean);
    g.dw = durbin_watson(fit.residuals).statistic;
    return g;
}

TimeSeries standardized_residuals(const FitResult& fit) {
    if (!fit.converged) throw DomainError("standardized_residuals: fit did not converge");
    const auto& e = fit.residuals.values();
    std::vector<double> z(e.size());
    for (std::size_t t = 0; t < e.size(); ++t) {
        const double s = fit.variance.sigma[t];
        if (!(s > 0.0)) throw VarianceNonPositive("standardized_residuals: zero sigma");
        z[t] = e[t] / s;
    }
    return TimeSeries(fit.residuals.dates(), std::move(z), "std_resid");
}

std::vector<ComparisonRow> compare(const TimeSeries& y, const std::vector<ModelEntry>& specs,
                                   const FitOptions& options) {
    if (specs.size() < 2) throw InsufficientData("compare needs at least two specifications");
    std::vector<ComparisonRow> rows(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        ComparisonRow& row = rows[i];
        row.label = specs[i].label;
        try {
            const FitResult f = fit(y, specs[i].mean, specs[i].var, specs[i].dist, options);
            row.ok = true;
            row.converged = f.converged;
            row.r_squared = f.r_squared;
            row.dw = f.dw;
            row.aic = f.aic;
            row.bic = f.bic;
            row.hq = f.hq;
            row.n_params = f.n_params;
            if (f.converged) {
                const TestResult arch = arch_lm(standardized_residuals(f), 7);
                row.arch_stat = arch.statistic;
                row.arch_p = arch.p_value;
                row.arch_remains = arch.reject_at_5pct;
            }
        } catch (const Error& err) {
            row.ok = false;
            row.error = err.what();
        }
    }

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].ok) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows[a].aic != rows[b].aic) return rows[a].aic < rows[b].aic;
        if (rows[a].bic != rows[b].bic) return rows[a].bic < rows[b].bic;
        return rows[a].n_params < rows[b].n_params;
    });
    for (std::size_t r = 0; r < order.size(); ++r) rows[order[r]].rank = static_cast<int>(r + 1);
    return rows;
}

}  // namespace spotvol
