#include "spotvol/stat_tests.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spotvol/math.hpp"
#include "spotvol/stats.hpp"

namespace spotvol {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Dickey-Fuller critical values (Fuller 1976), interpolated in 1/n.
// Rows: sample size 25, 50, 100, 250, 500, asymptotic. Columns: 1%, 5%, 10%.
struct DfTable {
    double rows[6][3];
};

constexpr double kDfSampleSizes[6] = {25, 50, 100, 250, 500, 1e9};

constexpr DfTable kDfNone = {{{-2.66, -1.95, -1.60},
                              {-2.62, -1.95, -1.61},
                              {-2.60, -1.95, -1.61},
                              {-2.58, -1.95, -1.62},
                              {-2.58, -1.95, -1.62},
                              {-2.58, -1.95, -1.62}}};
constexpr DfTable kDfConstant = {{{-3.75, -3.00, -2.63},
                                  {-3.58, -2.93, -2.60},
                                  {-3.51, -2.89, -2.58},
                                  {-3.46, -2.88, -2.57},
                                  {-3.44, -2.87, -2.57},
                                  {-3.43, -2.86, -2.57}}};
constexpr DfTable kDfConstantTrend = {{{-4.38, -3.60, -3.24},
                                       {-4.15, -3.50, -3.18},
                                       {-4.04, -3.45, -3.15},
                                       {-3.99, -3.43, -3.13},
                                       {-3.98, -3.42, -3.13},
                                       {-3.96, -3.41, -3.12}}};

void df_critical_values(TrendSpec trend, int n, double out[3]) {
    const DfTable& table = trend == TrendSpec::None ? kDfNone
                           : trend == TrendSpec::Constant ? kDfConstant
                                                          : kDfConstantTrend;
    const double inv_n = 1.0 / std::max(n, 25);
    for (int c = 0; c < 3; ++c) {
        double value = table.rows[0][c];
        for (int r = 1; r < 6; ++r) {
            const double inv_hi = 1.0 / kDfSampleSizes[r - 1];
            const double inv_lo = 1.0 / kDfSampleSizes[r];
            if (inv_n <= inv_hi) {
                const double w = (inv_hi - inv_n) / (inv_hi - inv_lo);
                value = table.rows[r - 1][c] + w * (table.rows[r][c] - table.rows[r - 1][c]);
                if (inv_n >= inv_lo) break;
            }
        }
        out[c] = value;
    }
}

TestResult bracketed_result(std::string name, double stat, TrendSpec trend, int n, int lags) {
    double cv[3];
    df_critical_values(trend, n, cv);
    TestResult r;
    r.name = std::move(name);
    r.statistic = stat;
    r.lags = lags;
    if (stat < cv[0]) {
        r.bracket = PBracket::BelowOnePct;
        r.p_value = 0.01;
    } else if (stat < cv[1]) {
        r.bracket = PBracket::BelowFivePct;
        r.p_value = 0.05;
    } else if (stat < cv[2]) {
        r.bracket = PBracket::BelowTenPct;
        r.p_value = 0.10;
    } else {
        r.bracket = PBracket::AtLeastTenPct;
        r.p_value = 1.0;
    }
    r.reject_at_5pct = r.bracket == PBracket::BelowOnePct || r.bracket == PBracket::BelowFivePct;
    return r;
}

void require_complete(const TimeSeries& s, const char* op) {
    if (s.has_missing()) {
        throw DomainError(std::string(op) + " requires a complete series; impute first");
    }
}

}  // namespace

std::string bracket_label(PBracket b, double p_value) {
    switch (b) {
        case PBracket::Exact: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6g", p_value);
            return buf;
        }
        case PBracket::BelowOnePct: return "<0.01";
        case PBracket::BelowFivePct: return "<0.05";
        case PBracket::BelowTenPct: return "<0.10";
        case PBracket::AtLeastTenPct: return ">=0.10";
        case PBracket::None: return "n/a";
    }
    return "n/a";
}

TestResult jarque_bera(const TimeSeries& s) {
    require_complete(s, "jarque_bera");
    if (s.size() < 8) throw InsufficientData("jarque_bera requires n >= 8");
    const SummaryStats st = summary_stats(s);  // throws ConstantSeries when degenerate
    const double n = static_cast<double>(st.n);
    const double jb =
        n / 6.0 * (st.skewness * st.skewness + 0.25 * std::pow(st.kurtosis - 3.0, 2.0));
    TestResult r;
    r.name = "jarque_bera";
    r.statistic = jb;
    r.p_value = math::chi2_sf(jb, 2.0);
    r.reject_at_5pct = r.p_value < 0.05;
    return r;
}

DfRegression df_regression(const TimeSeries& s, int lags, TrendSpec trend) {
    require_complete(s, "df_regression");
    if (lags < 0) throw DomainError("df_regression: lags must be nonnegative");
    const auto& y = s.values();
    const int n = static_cast<int>(y.size());
    const int start = lags + 1;  // first usable t for delta-y with all lagged diffs
    const int rows = n - start;
    const int det = trend == TrendSpec::None ? 0 : trend == TrendSpec::Constant ? 1 : 2;
    const int cols = det + 1 + lags;
    if (rows <= cols + 10) {
        throw InsufficientData("df_regression: series too short for requested lags");
    }

    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd dy(rows);
    for (int i = 0; i < rows; ++i) {
        const int t = start + i;
        dy(i) = y[t] - y[t - 1];
        int c = 0;
        if (det >= 1) X(i, c++) = 1.0;
        if (det >= 2) X(i, c++) = static_cast<double>(t);
        X(i, c++) = y[t - 1];
        for (int j = 1; j <= lags; ++j) X(i, c++) = y[t - j] - y[t - j - 1];
    }
    const math::OlsFit fit = math::ols(X, dy);
    DfRegression out;
    out.coef = fit.coef(det);
    out.std_err = fit.std_err(det);
    if (!(out.std_err > 0.0)) throw SingularDesign("df_regression: zero standard error");
    out.t_ratio = out.coef / out.std_err;
    out.sigma2 = fit.sigma2;
    out.nobs = rows;
    out.residuals = fit.residuals;
    return out;
}

TestResult adf_test(const TimeSeries& s, int lags, TrendSpec trend) {
    const DfRegression reg = df_regression(s, lags, trend);
    return bracketed_result("adf", reg.t_ratio, trend, reg.nobs, lags);
}

TestResult pp_test(const TimeSeries& s, TrendSpec trend) {
    if (s.size() < 30) throw InsufficientData("pp_test requires n >= 30");
    const DfRegression reg = df_regression(s, 0, trend);
    const auto& u = reg.residuals;
    const double n = static_cast<double>(reg.nobs);

    const int bandwidth = static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 2.0 / 9.0)));
    double gamma0 = 0.0;
    for (double e : u) gamma0 += e * e;
    gamma0 /= n;
    double lam2 = gamma0;
    for (int j = 1; j <= bandwidth; ++j) {
        double gj = 0.0;
        for (std::size_t t = j; t < u.size(); ++t) gj += u[t] * u[t - j];
        gj /= n;
        const double w = 1.0 - static_cast<double>(j) / (bandwidth + 1.0);
        lam2 += 2.0 * w * gj;
    }
    if (!(lam2 > 0.0)) throw DegenerateResiduals("pp_test: nonpositive long-run variance");

    // Z_tau = sqrt(g0/l2) * t - (l2 - g0) * n * se / (2 * sqrt(l2) * s)
    const double s_ols = std::sqrt(reg.sigma2);
    const double z_tau = std::sqrt(gamma0 / lam2) * reg.t_ratio -
                         (lam2 - gamma0) * n * reg.std_err / (2.0 * std::sqrt(lam2) * s_ols);
    return bracketed_result("pp", z_tau, trend, reg.nobs, bandwidth);
}

std::vector<TestResult> ljung_box(const TimeSeries& s, int max_lag, int dof_offset) {
    const std::size_t n = s.size();
    if (max_lag < 1) throw DomainError("ljung_box: max_lag must be positive");
    if (static_cast<std::size_t>(4 * max_lag) >= n) {
        throw InsufficientData("ljung_box: max_lag must be below n/4");
    }
    const std::vector<double> rho = acf(s, max_lag);  // throws ConstantSeries
    const double nn = static_cast<double>(n);
    std::vector<TestResult> out;
    out.reserve(max_lag);
    double q = 0.0;
    for (int m = 1; m <= max_lag; ++m) {
        q += rho[m - 1] * rho[m - 1] / (nn - m);
        TestResult r;
        r.name = "ljung_box";
        r.statistic = nn * (nn + 2.0) * q;
        r.lags = m;
        const int df = m - dof_offset;
        if (df >= 1) {
            r.p_value = math::chi2_sf(r.statistic, static_cast<double>(df));
            r.reject_at_5pct = r.p_value < 0.05;
        } else {
            r.p_value = kNaN;
            r.bracket = PBracket::None;
        }
        out.push_back(std::move(r));
    }
    return out;
}

TestResult arch_lm(const TimeSeries& residuals, int lags) {
    require_complete(residuals, "arch_lm");
    if (lags < 1) throw DomainError("arch_lm: lags must be positive");
    const auto& e = residuals.values();
    const int n = static_cast<int>(e.size());
    if (n <= lags + 10) throw InsufficientData("arch_lm: series too short for requested lags");

    std::vector<double> e2(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) e2[i] = e[i] * e[i];

    const int rows = n - lags;
    Eigen::MatrixXd X(rows, lags + 1);
    Eigen::VectorXd y(rows);
    for (int i = 0; i < rows; ++i) {
        const int t = lags + i;
        y(i) = e2[t];
        X(i, 0) = 1.0;
        for (int j = 1; j <= lags; ++j) X(i, j) = e2[t - j];
    }
    const math::OlsFit fit = math::ols(X, y);
    const double ybar = y.mean();
    double sst = 0.0;
    for (int i = 0; i < rows; ++i) sst += (y(i) - ybar) * (y(i) - ybar);
    if (!(sst > 0.0)) throw ConstantSeries("arch_lm: squared residuals are constant");
    const double r2 = 1.0 - fit.ssr / sst;

    TestResult r;
    r.name = "arch_lm";
    r.statistic = static_cast<double>(rows) * r2;
    r.lags = lags;
    r.p_value = math::chi2_sf(r.statistic, static_cast<double>(lags));
    r.reject_at_5pct = r.p_value < 0.05;
    return r;
}

TestResult durbin_watson(const TimeSeries& residuals) {
    require_complete(residuals, "durbin_watson");
    const auto& e = residuals.values();
    if (e.size() < 3) throw InsufficientData("durbin_watson requires n >= 3");
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < e.size(); ++t) {
        den += e[t] * e[t];
        if (t > 0) num += (e[t] - e[t - 1]) * (e[t] - e[t - 1]);
    }
    if (!(den > 0.0)) throw DegenerateResiduals("durbin_watson: all residuals are zero");
    TestResult r;
    r.name = "durbin_watson";
    r.statistic = num / den;
    r.p_value = kNaN;
    r.bracket = PBracket::None;
    return r;
}

}  // namespace spotvol
