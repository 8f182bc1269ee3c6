#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spotvol/timeseries.hpp"

namespace spotvol {

// Conditional standard-deviation path.
struct VolPath {
    std::vector<Date> dates;
    std::vector<double> sigma;
    std::string estimator;  // e.g. "rolling(30)", "ewma(0.94)", "garch(1,1)"

    std::vector<double> sigma2() const {
        std::vector<double> v(sigma.size());
        for (std::size_t i = 0; i < sigma.size(); ++i) v[i] = sigma[i] * sigma[i];
        return v;
    }
};

struct PersistenceSummary {
    double persistence = 0.0;                       // A + G
    std::optional<double> half_life_days;           // ln(0.5)/ln(A+G), absent when A+G >= 1
    std::optional<double> unconditional_sigma;      // sqrt(k/(1-A-G)), absent when A+G >= 1
};

// Trailing-window sample standard deviation (divisor m-1); annualization
// multiplies by sqrt(365/m). Output length n - m + 1, dated at window ends.
VolPath rolling_volatility(const TimeSeries& returns, int window, bool annualize);

struct EwmaInit {
    enum Kind { FirstSquared, SampleVariance, Given } kind = SampleVariance;
    double v0 = 0.0;

    static EwmaInit first_squared() { return {FirstSquared, 0.0}; }
    static EwmaInit sample_variance() { return {SampleVariance, 0.0}; }
    static EwmaInit given(double v0) { return {Given, v0}; }
};

// RiskMetrics filter sigma_t^2 = (1-lambda) r_{t-1}^2 + lambda sigma_{t-1}^2.
// The default initialization is the mean square of the full return series.
VolPath ewma_variance(const TimeSeries& returns, double lambda,
                      EwmaInit init = EwmaInit::sample_variance());

// EWMA conditional correlation with lagged cross products; values clamped to
// [-1, 1], entries with a zero variance reported as NaN.
TimeSeries ewma_correlation(const TimeSeries& x, const TimeSeries& y, double lambda);

PersistenceSummary persistence_summary(double k, double arch_a, double garch_g);

// Smallest K with lambda^K <= tolerance.
int effective_window(double lambda, double tolerance);

}  // namespace spotvol
