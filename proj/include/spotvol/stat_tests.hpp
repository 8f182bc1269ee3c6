#pragma once

#include <string>
#include <vector>

#include "spotvol/timeseries.hpp"

namespace spotvol {

// How the p-value field is to be read. Unit-root tests report a bracket from
// the Dickey-Fuller critical-value table instead of an exact probability.
enum class PBracket {
    Exact,          // p_value is the exact tail probability
    BelowOnePct,    // p < 0.01 (p_value holds 0.01)
    BelowFivePct,   // 0.01 <= p < 0.05 (p_value holds 0.05)
    BelowTenPct,    // 0.05 <= p < 0.10 (p_value holds 0.10)
    AtLeastTenPct,  // p >= 0.10 (p_value holds 1.0)
    None,           // statistic has no associated p-value (Durbin-Watson)
};

std::string bracket_label(PBracket b, double p_value);

struct TestResult {
    std::string name;
    double statistic = 0.0;
    double p_value = 1.0;
    PBracket bracket = PBracket::Exact;
    int lags = 0;
    bool reject_at_5pct = false;
};

// Jarque-Bera normality test: JB = n/6 * (S^2 + (K-3)^2/4), chi-square(2) tail.
TestResult jarque_bera(const TimeSeries& s);

enum class TrendSpec { None, Constant, ConstantTrend };

// Internals of the Dickey-Fuller regression, shared by the ADF and PP tests.
struct DfRegression {
    double t_ratio = 0.0;   // t-statistic on the level coefficient
    double coef = 0.0;      // coefficient on y_{t-1}
    double std_err = 0.0;
    double sigma2 = 0.0;    // OLS residual variance, ssr / (n - k)
    int nobs = 0;           // regression sample size
    std::vector<double> residuals;
};

DfRegression df_regression(const TimeSeries& s, int lags, TrendSpec trend);

// Augmented Dickey-Fuller unit-root test. Rejection brackets come from the
// embedded Dickey-Fuller critical-value table for the chosen trend case.
TestResult adf_test(const TimeSeries& s, int lags, TrendSpec trend);

// Phillips-Perron Z_tau test: lag-0 Dickey-Fuller regression with the
// Newey-West (Bartlett kernel) long-run variance correction, bandwidth
// floor(4 * (n/100)^{2/9}).
TestResult pp_test(const TimeSeries& s, TrendSpec trend);

// Ljung-Box-Pierce Q statistics for lags 1..max_lag. dof_offset subtracts
// fitted-model degrees of freedom from the chi-square df (default 0).
std::vector<TestResult> ljung_box(const TimeSeries& s, int max_lag, int dof_offset = 0);

// Engle's ARCH-LM test: eps^2 on its own lags, statistic (n - lags) * R^2.
TestResult arch_lm(const TimeSeries& residuals, int lags);

// Durbin-Watson first-order serial-correlation statistic; no p-value.
TestResult durbin_watson(const TimeSeries& residuals);

}  // namespace spotvol
