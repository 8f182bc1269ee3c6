#pragma once

#include <utility>
#include <vector>

#include "spotvol/timeseries.hpp"

namespace spotvol {

struct SummaryStats {
    std::size_t n = 0;
    double min = 0, max = 0, mean = 0, median = 0;
    double std = 0;       // divisor n-1
    double cv = 0;        // std / mean
    double skewness = 0;  // m3 / m2^1.5, central moments with divisor n
    double kurtosis = 0;  // m4 / m2^2, raw (normal ~ 3)
    double iqr = 0;       // linear-interpolated quartiles
};

SummaryStats summary_stats(const TimeSeries& s);

// Linear-interpolation (type-7) sample quantile, p in [0, 1].
double quantile(const std::vector<double>& sorted_values, double p);

struct CorrelogramEntry {
    int lag = 0;
    double acf = 0;
    double pacf = 0;
};

// Sample autocorrelations for lags 1..max_lag with the single global
// denominator sum((x - mean)^2).
std::vector<double> acf(const TimeSeries& s, int max_lag);

// Partial autocorrelations via the Durbin-Levinson recursion on the sample ACF.
std::vector<double> pacf(const TimeSeries& s, int max_lag);

std::vector<CorrelogramEntry> correlogram(const TimeSeries& s, int max_lag);

struct QqDist {
    enum Kind { Normal, StudentT } kind = Normal;
    double mu = 0.0;
    double sigma = 1.0;
    double nu = 0.0;  // StudentT only, must exceed 2

    static QqDist normal(double mu = 0.0, double sigma = 1.0) { return {Normal, mu, sigma, 0.0}; }
    static QqDist student_t(double nu) { return {StudentT, 0.0, 1.0, nu}; }
};

// (theoretical, empirical) quantile pairs at plotting positions (i - 0.5)/n.
// Student-t quantiles are standardized to unit variance, matching the
// innovation convention, hence the nu > 2 requirement.
std::vector<std::pair<double, double>> qq_points(const TimeSeries& s, const QqDist& dist);

}  // namespace spotvol
