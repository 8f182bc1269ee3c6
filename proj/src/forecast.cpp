#include "spotvol/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "spotvol/math.hpp"

namespace spotvol {

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double std_pop(const std::vector<double>& v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size()));
}

// One Monte Carlo egarch path from the origin state.
void egarch_path_accumulate(const FitResult& fit, std::size_t t0, int horizon,
                            std::uint64_t seed, std::vector<double>& sigma2_sum) {
    const ParamVector& p = fit.params;
    const VarianceSpec& spec = fit.var;
    const double nu = resolve_nu(p, fit.dist);
    const double ez = expected_abs_z(fit.dist, nu);
    const bool student = fit.dist.kind == InnovationDist::StudentT;
    math::Rng rng(seed);

    const auto& sig = fit.variance.sigma;
    const auto& eps = fit.residuals.values();
    // histories indexed backwards from the forecast step
    std::vector<double> log_h_hist, z_hist;
    const int max_lag = std::max(spec.p, spec.q);
    for (int l = 0; l < max_lag; ++l) {
        const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t0) - l;
        if (idx >= 0) {
            log_h_hist.push_back(2.0 * std::log(sig[idx]));
            z_hist.push_back(eps[idx] / sig[idx]);
        } else {
            log_h_hist.push_back(log_h_hist.empty() ? 0.0 : log_h_hist.back());
            z_hist.push_back(0.0);
        }
    }

    const std::size_t reg_origin = t0 + static_cast<std::size_t>(fit.presample);
    for (int h = 1; h <= horizon; ++h) {
        double lh = p.k;
        for (int i = 1; i <= spec.p; ++i) lh += p.garch[i - 1] * log_h_hist[i - 1];
        for (int j = 1; j <= spec.q; ++j) {
            lh += p.arch[j - 1] * (std::fabs(z_hist[j - 1]) - ez) +
                  p.leverage[j - 1] * z_hist[j - 1];
        }
        for (std::size_t m = 0; m < spec.regressors.size(); ++m) {
            lh += p.vreg[m] * spec.regressors[m].values[reg_origin];  // held at origin
        }
        const double ht = std::exp(lh);
        sigma2_sum[h - 1] += ht;
        const double z = student ? rng.student_t_unit(nu) : rng.normal();
        log_h_hist.insert(log_h_hist.begin(), lh);
        log_h_hist.pop_back();
        z_hist.insert(z_hist.begin(), z);
        z_hist.pop_back();
    }
}

}  // namespace

ForecastReport in_sample_forecast(const FitResult& fit, const TimeSeries& y) {
    if (!fit.converged) throw DomainError("in_sample_forecast: fit did not converge");
    const std::size_t pre = static_cast<std::size_t>(fit.presample);
    if (y.size() != fit.residuals.size() + pre) {
        throw SpecMismatch("in_sample_forecast: fit residuals not aligned with y");
    }
    const auto& e = fit.residuals.values();
    const std::size_t n = e.size();
    std::vector<double> actual(n), fitted(n);
    for (std::size_t t = 0; t < n; ++t) {
        actual[t] = y.values()[t + pre];
        fitted[t] = actual[t] - e[t];
    }

    double mse = 0.0;
    for (std::size_t t = 0; t < n; ++t) mse += e[t] * e[t];
    mse /= static_cast<double>(n);

    ForecastReport rep(TimeSeries(fit.residuals.dates(), fitted, "fitted(" + y.name() + ")"));
    rep.mse = mse;
    if (mse == 0.0) {
        rep.theil_u = 0.0;
        rep.bias_proportion = 0.0;
        rep.variance_proportion = 0.0;
        rep.covariance_proportion = 1.0;
        return rep;
    }

    double ms_fitted = 0.0, ms_actual = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        ms_fitted += fitted[t] * fitted[t];
        ms_actual += actual[t] * actual[t];
    }
    ms_fitted /= static_cast<double>(n);
    ms_actual /= static_cast<double>(n);
    rep.theil_u = std::sqrt(mse) / (std::sqrt(ms_fitted) + std::sqrt(ms_actual));

    const double mean_f = mean_of(fitted);
    const double mean_a = mean_of(actual);
    const double sd_f = std_pop(fitted, mean_f);
    const double sd_a = std_pop(actual, mean_a);
    rep.bias_proportion = (mean_f - mean_a) * (mean_f - mean_a) / mse;
    rep.variance_proportion = (sd_f - sd_a) * (sd_f - sd_a) / mse;
    rep.covariance_proportion = 1.0 - rep.bias_proportion - rep.variance_proportion;
    return rep;
}

VarianceForecast forecast_variance(const FitResult& fit, const Date& origin, int horizon,
                                   int mc_paths, std::uint64_t mc_seed) {
    if (!fit.converged) throw DomainError("forecast_variance: fit did not converge");
    if (horizon < 1) throw DomainError("forecast_variance: horizon must be positive");
    const auto& dates = fit.variance.dates;
    const auto it = std::lower_bound(dates.begin(), dates.end(), origin);
    if (it == dates.end() || !(*it == origin)) {
        throw RangeError("forecast origin " + origin.to_string() + " is not in the fitted sample");
    }
    const std::size_t t0 = static_cast<std::size_t>(it - dates.begin());

    VarianceForecast out;
    out.origin = origin;
    out.horizon = horizon;
    out.path.resize(horizon);

    const ParamVector& p = fit.params;
    const VarianceSpec& spec = fit.var;

    if (spec.family == VarianceFamily::Egarch) {
        std::vector<double> sum(horizon, 0.0);
        for (int path = 0; path < mc_paths; ++path) {
            egarch_path_accumulate(fit, t0, horizon, mc_seed * 0x9e3779b97f4a7c15ULL + path, sum);
        }
        for (int h = 0; h < horizon; ++h) out.path[h] = sum[h] / mc_paths;
        return out;
    }

    // Effective intercept: variance regressors held at their origin values.
    double k_eff = p.k;
    for (std::size_t m = 0; m < spec.regressors.size(); ++m) {
        k_eff += p.vreg[m] * spec.regressors[m].values[t0 + static_cast<std::size_t>(fit.presample)];
    }

    const auto& eps = fit.residuals.values();
    const auto& sig = fit.variance.sigma;
    const bool gjr = spec.family == VarianceFamily::Gjr;
    // presample substitute for lags that reach before the estimation sample
    double v0 = 0.0;
    for (double e : eps) v0 += e * e;
    v0 /= static_cast<double>(eps.size());

    // sequence of E[sigma^2] forecasts; E[eps^2] = sigma^2 in the future,
    // observed eps^2 (and indicator) in the past.
    for (int h = 1; h <= horizon; ++h) {
        double value = k_eff;
        for (int i = 1; i <= spec.p; ++i) {
            const int offset = h - i;  // >0: forecasted, <=0: observed
            if (offset >= 1) {
                value += p.garch[i - 1] * out.path[offset - 1];
            } else {
                const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t0) + offset;
                value += p.garch[i - 1] * (idx >= 0 ? sig[idx] * sig[idx] : v0);
            }
        }
        for (int j = 1; j <= spec.q; ++j) {
            const int offset = h - j;
            if (offset >= 1) {
                double coef = p.arch[j - 1];
                if (gjr) coef += 0.5 * p.leverage[j - 1];
                value += coef * out.path[offset - 1];
            } else {
                const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t0) + offset;
                if (idx >= 0) {
                    const double e = eps[idx];
                    value += p.arch[j - 1] * e * e;
                    if (gjr && e < 0.0) value += p.leverage[j - 1] * e * e;
                } else {
                    value += p.arch[j - 1] * v0;
                    if (gjr) value += 0.5 * p.leverage[j - 1] * v0;
                }
            }
        }
        out.path[h - 1] = value;
    }

    const double persistence = p.persistence(spec);
    if (persistence < 1.0) out.unconditional = k_eff / (1.0 - persistence);
    return out;
}

double intervention_impact(double beta) { return 100.0 * std::expm1(beta); }

StepDummy make_step_dummy(const std::vector<Date>& dates, const Date& intervention) {
    if (dates.empty()) throw InsufficientData("make_step_dummy: empty date index");
    std::vector<double> v(dates.size(), 0.0);
    for (std::size_t i = 0; i < dates.size(); ++i) {
        if (!(dates[i] < intervention)) v[i] = 1.0;
    }
    StepDummy out(TimeSeries(dates, std::move(v), "step"));
    out.beyond_range = intervention > dates.back();
    return out;
}

}  // namespace spotvol
