#include "spotvol/vol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spotvol {

namespace {

void require_complete(const TimeSeries& s, const char* op) {
    if (s.has_missing()) {
        throw DomainError(std::string(op) + " requires a complete series; impute first");
    }
}

double mean_square(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return sum / static_cast<double>(v.size());
}

double initial_variance(const std::vector<double>& r, const EwmaInit& init) {
    switch (init.kind) {
        case EwmaInit::FirstSquared: return r.front() * r.front();
        case EwmaInit::SampleVariance: return mean_square(r);
        case EwmaInit::Given:
            if (!(init.v0 >= 0.0)) throw DomainError("ewma init variance must be nonnegative");
            return init.v0;
    }
    throw DomainError("unknown ewma initialization");
}

}  // namespace

VolPath rolling_volatility(const TimeSeries& returns, int window, bool annualize) {
    require_complete(returns, "rolling_volatility");
    if (window < 2) throw DomainError("rolling_volatility: window must be >= 2");
    const auto& r = returns.values();
    if (r.size() < static_cast<std::size_t>(window)) {
        throw InsufficientData("rolling_volatility: window exceeds series length");
    }
    const double scale = annualize ? std::sqrt(365.0 / window) : 1.0;
    const std::size_t out_n = r.size() - window + 1;
    VolPath path;
    path.estimator = "rolling(" + std::to_string(window) + ")";
    path.dates.reserve(out_n);
    path.sigma.reserve(out_n);
    for (std::size_t end = window - 1; end < r.size(); ++end) {
        const std::size_t begin = end + 1 - window;
        double mean = 0.0;
        for (std::size_t t = begin; t <= end; ++t) mean += r[t];
        mean /= window;
        double ss = 0.0;
        for (std::size_t t = begin; t <= end; ++t) ss += (r[t] - mean) * (r[t] - mean);
        path.dates.push_back(returns.date(end));
        path.sigma.push_back(std::sqrt(ss / (window - 1)) * scale);
    }
    return path;
}

VolPath ewma_variance(const TimeSeries& returns, double lambda, EwmaInit init) {
    require_complete(returns, "ewma_variance");
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("ewma_variance: lambda must be in (0,1)");
    const auto& r = returns.values();
    if (r.size() < 2) throw InsufficientData("ewma_variance requires n >= 2");

    VolPath path;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "ewma(%g)", lambda);
    path.estimator = buf;
    path.dates = returns.dates();
    path.sigma.resize(r.size());
    double v = initial_variance(r, init);
    path.sigma[0] = std::sqrt(v);
    for (std::size_t t = 1; t < r.size(); ++t) {
        v = (1.0 - lambda) * r[t - 1] * r[t - 1] + lambda * v;
        path.sigma[t] = std::sqrt(v);
    }
    return path;
}

TimeSeries ewma_correlation(const TimeSeries& x, const TimeSeries& y, double lambda) {
    require_complete(x, "ewma_correlation");
    require_complete(y, "ewma_correlation");
    require_aligned(x, y);
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw DomainError("ewma_correlation: lambda must be in (0,1)");
    }
    const auto& xv = x.values();
    const auto& yv = y.values();
    const std::size_t n = xv.size();
    if (n < 2) throw InsufficientData("ewma_correlation requires n >= 2");

    // Variance recursions start from mean squares, the covariance from the
    // mean cross product, so identical inputs give rho == 1 from the start.
    double vx = mean_square(xv);
    double vy = mean_square(yv);
    double c = 0.0;
    for (std::size_t t = 0; t < n; ++t) c += xv[t] * yv[t];
    c /= static_cast<double>(n);

    std::vector<double> rho(n);
    auto emit = [&](std::size_t t) {
        const double denom = vx * vy;
        if (denom > 0.0) {
            rho[t] = std::clamp(c / std::sqrt(denom), -1.0, 1.0);
        } else {
            rho[t] = std::numeric_limits<double>::quiet_NaN();
        }
    };
    emit(0);
    for (std::size_t t = 1; t < n; ++t) {
        vx = (1.0 - lambda) * xv[t - 1] * xv[t - 1] + lambda * vx;
        vy = (1.0 - lambda) * yv[t - 1] * yv[t - 1] + lambda * vy;
        c = (1.0 - lambda) * xv[t - 1] * yv[t - 1] + lambda * c;
        emit(t);
    }
    return TimeSeries(x.dates(), std::move(rho), "ewma_corr(" + x.name() + "," + y.name() + ")");
}

PersistenceSummary persistence_summary(double k, double arch_a, double garch_g) {
    if (k < 0.0 || arch_a < 0.0 || garch_g < 0.0) {
        throw DomainError("persistence_summary: k, A, G must be nonnegative");
    }
    PersistenceSummary out;
    out.persistence = arch_a + garch_g;
    if (out.persistence < 1.0) {
        out.half_life_days =
            out.persistence > 0.0 ? std::log(0.5) / std::log(out.persistence) : 0.0;
        out.unconditional_sigma = std::sqrt(k / (1.0 - out.persistence));
    }
    return out;
}

int effective_window(double lambda, double tolerance) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("effective_window: lambda in (0,1)");
    if (!(tolerance > 0.0 && tolerance < 1.0)) {
        throw DomainError("effective_window: tolerance in (0,1)");
    }
    // The epsilon keeps exact hits (e.g. lambda^2 == tolerance) from rounding up.
    return static_cast<int>(std::ceil(std::log(tolerance) / std::log(lambda) - 1e-12));
}

}  // namespace spotvol
