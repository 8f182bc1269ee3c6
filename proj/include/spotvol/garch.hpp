#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spotvol/timeseries.hpp"
#include "spotvol/vol.hpp"

namespace spotvol {

// A named exogenous series already aligned to the target's date index.
struct Regressor {
    std::string name;
    std::vector<double> values;
};

// ARMAX(R, M, Nx) conditional-mean equation.
struct MeanSpec {
    int ar = 0;
    int ma = 0;
    bool constant = true;
    std::vector<Regressor> regressors;

    int presample() const { return ar > ma ? ar : ma; }
    int param_count() const {
        return (constant ? 1 : 0) + ar + ma + static_cast<int>(regressors.size());
    }
};

enum class VarianceFamily { Garch, Egarch, Gjr };

std::string family_name(VarianceFamily f);
VarianceFamily family_from_name(const std::string& name);

struct VarianceSpec {
    VarianceFamily family = VarianceFamily::Garch;
    int p = 1;  // GARCH order (lags of sigma^2)
    int q = 1;  // ARCH order (lags of eps^2)
    std::vector<Regressor> regressors;

    bool has_leverage() const { return family != VarianceFamily::Garch; }
    int param_count() const {
        return 1 + p + q + (has_leverage() ? q : 0) + static_cast<int>(regressors.size());
    }
};

struct InnovationDist {
    enum Kind { Normal, StudentT } kind = Normal;
    double nu = 0.0;  // StudentT only; must exceed 2

    static InnovationDist normal() { return {Normal, 0.0}; }
    static InnovationDist student_t(double nu) { return {StudentT, nu}; }
};

// E|z| for a unit-variance innovation, the centering constant of the
// log-variance recursion.
double expected_abs_z(const InnovationDist& dist, double nu);

// Full coefficient set of a composite mean/variance specification. Entries
// must match the spec orders exactly (validate() checks).
struct ParamVector {
    double c = 0.0;
    std::vector<double> ar;        // phi_1..phi_R
    std::vector<double> ma;        // theta_1..theta_M
    std::vector<double> beta;      // mean regressor coefficients
    double k = 0.0;                // variance intercept
    std::vector<double> garch;     // G_1..G_P
    std::vector<double> arch;      // A_1..A_Q
    std::vector<double> leverage;  // L_1..L_Q (gjr/egarch only)
    std::vector<double> vreg;      // variance regressor coefficients
    std::optional<double> nu;      // estimated degrees of freedom

    double persistence(const VarianceSpec& spec) const;
};

// Resolved degrees of freedom: params.nu when present, else dist.nu.
double resolve_nu(const ParamVector& params, const InnovationDist& dist);

// Shape check (throws SpecMismatch) plus family constraints (throws
// DomainError): k > 0 and A, G >= 0 for garch/gjr, A_j + L_j >= 0 for gjr,
// nu > 2 under student_t. EGARCH coefficients are unconstrained in sign.
void validate(const ParamVector& params, const MeanSpec& mean, const VarianceSpec& var,
              const InnovationDist& dist);
void validate_variance(const ParamVector& params, const VarianceSpec& var,
                       const InnovationDist& dist);

// Residuals of the ARMAX recursion. The first max(R, M) entries are the
// conditioning sample and are fixed at zero.
struct ResidualPath {
    TimeSeries eps;
    int presample = 0;
};

ResidualPath mean_residuals(const ParamVector& params, const TimeSeries& y, const MeanSpec& spec);

// Conditional-variance recursion over a residual series. Presample values:
// sigma^2 and eps^2 are the initialization v0 (mean square of eps unless
// given), the gjr indicator its expectation 1/2, and egarch z-terms zero.
VolPath variance_path(const ParamVector& params, const TimeSeries& eps, const VarianceSpec& spec,
                      const InnovationDist& dist,
                      std::optional<double> presample_variance = std::nullopt);

// Conditional log likelihood, conditioning observations excluded. Innovations
// are normal(0, sigma_t^2) or standardized student-t scaled to that variance.
double log_likelihood(const ParamVector& params, const TimeSeries& y, const MeanSpec& mean,
                      const VarianceSpec& var, const InnovationDist& dist);

// Simulates the composite process. Deterministic given the seed. Bound
// regressors ride in the specs and must cover n observations. For
// t < max(R, M) the innovation is zero and the recursion uses whatever lags
// exist, which makes mean_residuals an exact inverse after the conditioning
// sample.
TimeSeries simulate(const ParamVector& params, const MeanSpec& mean, const VarianceSpec& var,
                    const InnovationDist& dist, std::size_t n, std::uint64_t seed);

namespace detail {

// Estimator entry point: negative log likelihood with no constraint
// validation; infeasible or degenerate evaluations return +infinity.
double penalized_neg_loglik(const ParamVector& params, const std::vector<double>& y,
                            const MeanSpec& mean, const VarianceSpec& var,
                            const InnovationDist& dist);

}  // namespace detail

}  // namespace spotvol
