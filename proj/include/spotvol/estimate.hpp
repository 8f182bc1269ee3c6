#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spotvol/garch.hpp"
#include "spotvol/stat_tests.hpp"
#include "spotvol/timeseries.hpp"
#include "spotvol/vol.hpp"

namespace spotvol {

struct FitOptions {
    int max_iterations = 500;
    double loglik_tol = 1e-8;   // relative improvement convergence threshold
    double grad_tol = 1e-5;
    double hessian_step = 1e-4;  // relative step for standard-error Hessian
    std::uint64_t seed = 0;      // reserved for stochastic restarts
    int restarts = 0;            // default: none
};

struct ParamEstimate {
    std::string name;
    double value = 0.0;
    double std_error = 0.0;  // NaN when the Hessian gave no usable entry
    double z_stat = 0.0;
    double p_value = 1.0;
};

struct FitResult {
    MeanSpec mean;
    VarianceSpec var;
    InnovationDist dist;
    ParamVector params;
    std::vector<ParamEstimate> table;

    double loglik = 0.0;
    double aic = 0.0, bic = 0.0, hq = 0.0;
    double r_squared = 0.0, adj_r_squared = 0.0, dw = 0.0;

    TimeSeries residuals;  // estimation sample (conditioning observations dropped)
    VolPath variance;      // aligned with residuals
    int presample = 0;
    int n_obs = 0;    // effective sample size
    int n_params = 0;
    bool converged = false;
    int iterations = 0;

    FitResult(TimeSeries resid, VolPath vol)
        : residuals(std::move(resid)), variance(std::move(vol)) {}
};

// Maximum-likelihood fit of the composite specification. Constraints are kept
// by optimizing a smooth reparameterization (k = exp(u), A and G via exp,
// nu = 2 + exp(u)); EGARCH coefficients are unconstrained. Non-convergence is
// reported through converged = false, not an exception.
FitResult fit(const TimeSeries& y, const MeanSpec& mean, const VarianceSpec& var,
              const InnovationDist& dist, const FitOptions& options = {});

struct Criteria {
    double aic = 0.0, bic = 0.0, hq = 0.0;
};

// Per-observation convention: aic = (-2 ll + 2k)/n, bic = (-2 ll + k ln n)/n,
// hq = (-2 ll + 2k ln ln n)/n.
Criteria information_criteria(double loglik, int k_params, int n);

struct Goodness {
    double r_squared = 0.0, adj_r_squared = 0.0, dw = 0.0;
};

// R^2 on the estimation sample, adjusted with the mean-equation parameter
// count, plus the Durbin-Watson statistic of the residuals.
Goodness goodness_of_fit(const FitResult& fit, const TimeSeries& y);

// eps_t / sigma_t over the estimation sample.
TimeSeries standardized_residuals(const FitResult& fit);

struct ModelEntry {
    std::string label;
    MeanSpec mean;
    VarianceSpec var;
    InnovationDist dist;
};

struct ComparisonRow {
    std::string label;
    bool ok = false;
    std::string error;
    double r_squared = 0.0, dw = 0.0;
    double aic = 0.0, bic = 0.0, hq = 0.0;
    double arch_stat = 0.0, arch_p = 0.0;
    bool arch_remains = false;  // ARCH(7) rejects at 5% on standardized residuals
    int n_params = 0;
    bool converged = false;
    int rank = 0;  // 1 = best by AIC; 0 for failed fits
};

// Fits every candidate and ranks the successful ones by AIC, ties broken by
// BIC, then by fewer parameters, then by listing order.
std::vector<ComparisonRow> compare(const TimeSeries& y, const std::vector<ModelEntry>& specs,
                                   const FitOptions& options = {});

}  // namespace spotvol
