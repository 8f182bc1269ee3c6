#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spotvol/estimate.hpp"
#include "spotvol/timeseries.hpp"

namespace spotvol {

// In-sample forecast quality: Theil's U and its bias/variance/covariance
// decomposition (the three proportions sum to one).
struct ForecastReport {
    TimeSeries fitted;
    double mse = 0.0;
    double theil_u = 0.0;
    double bias_proportion = 0.0;
    double variance_proportion = 0.0;
    double covariance_proportion = 0.0;

    explicit ForecastReport(TimeSeries f) : fitted(std::move(f)) {}
};

ForecastReport in_sample_forecast(const FitResult& fit, const TimeSeries& y);

struct VarianceForecast {
    Date origin;
    int horizon = 0;
    std::vector<double> path;               // sigma^2_{t+1} .. sigma^2_{t+h}
    std::optional<double> unconditional;    // absent when persistence >= 1 (and for egarch)
};

// Multi-step conditional-variance forecast from a fitted model. Closed form
// for garch/gjr (future indicator at its expectation 1/2, variance regressors
// held at their origin values); egarch by Monte Carlo over simulated
// innovation paths with per-path seeds derived from mc_seed.
VarianceForecast forecast_variance(const FitResult& fit, const Date& origin, int horizon,
                                   int mc_paths = 10000, std::uint64_t mc_seed = 1);

// Percent level impact of a step dummy with coefficient beta: 100(e^beta - 1).
double intervention_impact(double beta);

struct StepDummy {
    TimeSeries series;
    bool beyond_range = false;  // intervention falls after the last date

    explicit StepDummy(TimeSeries s) : series(std::move(s)) {}
};

// 0 before the intervention date, 1 on and after it.
StepDummy make_step_dummy(const std::vector<Date>& dates, const Date& intervention);

}  // namespace spotvol
