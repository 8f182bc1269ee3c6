#include "spotvol/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spotvol/math.hpp"

namespace spotvol {

namespace {

void require_complete(const TimeSeries& s, const char* op) {
    if (s.has_missing()) {
        throw DomainError(std::string(op) + " requires a complete series; impute first");
    }
}

double sample_mean(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

}  // namespace

double quantile(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 0) throw InsufficientData("quantile of empty sample");
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    const double h = (static_cast<double>(n) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= n) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

SummaryStats summary_stats(const TimeSeries& s) {
    require_complete(s, "summary_stats");
    const auto& v = s.values();
    if (v.size() < 2) throw InsufficientData("summary_stats requires n >= 2");

    SummaryStats st;
    st.n = v.size();
    const double n = static_cast<double>(v.size());
    st.mean = sample_mean(v);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = x - st.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    if (m2 == 0.0) throw ConstantSeries("summary_stats: constant series, moments undefined");
    st.std = std::sqrt(m2 / (n - 1.0));
    m2 /= n;
    m3 /= n;
    m4 /= n;
    st.skewness = m3 / std::pow(m2, 1.5);
    st.kurtosis = m4 / (m2 * m2);
    st.cv = st.mean != 0.0 ? st.std / st.mean : std::numeric_limits<double>::quiet_NaN();

    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    st.min = sorted.front();
    st.max = sorted.back();
    st.median = quantile(sorted, 0.5);
    st.iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
    return st;
}

std::vector<double> acf(const TimeSeries& s, int max_lag) {
    require_complete(s, "acf");
    const auto& v = s.values();
    const std::size_t n = v.size();
    if (max_lag < 1) throw DomainError("acf: max_lag must be positive");
    if (static_cast<std::size_t>(max_lag) >= n) {
        throw InsufficientData("acf: max_lag must be below series length");
    }
    const double mean = sample_mean(v);
    double denom = 0.0;
    for (double x : v) denom += (x - mean) * (x - mean);
    if (denom == 0.0) throw ConstantSeries("acf: constant series");

    std::vector<double> rho(max_lag);
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) {
            num += (v[t] - mean) * (v[t + k] - mean);
        }
        rho[k - 1] = num / denom;
    }
    return rho;
}

std::vector<double> pacf(const TimeSeries& s, int max_lag) {
    const std::vector<double> rho = acf(s, max_lag);
    // Durbin-Levinson: phi[k][k] is the lag-k partial autocorrelation.
    std::vector<double> out(max_lag);
    std::vector<double> phi_prev(max_lag + 1, 0.0), phi(max_lag + 1, 0.0);
    phi_prev[1] = rho[0];
    out[0] = rho[0];
    double denom = 1.0 - rho[0] * rho[0];
    for (int k = 2; k <= max_lag; ++k) {
        double num = rho[k - 1];
        for (int j = 1; j < k; ++j) num -= phi_prev[j] * rho[k - 1 - j];
        if (denom <= 0.0) {
            // Perfectly predictable series; remaining partials are 0.
            for (int r = k; r <= max_lag; ++r) out[r - 1] = 0.0;
            return out;
        }
        const double phi_kk = num / denom;
        phi[k] = phi_kk;
        for (int j = 1; j < k; ++j) phi[j] = phi_prev[j] - phi_kk * phi_prev[k - j];
        out[k - 1] = phi_kk;
        denom *= (1.0 - phi_kk * phi_kk);
        std::copy(phi.begin(), phi.begin() + k + 1, phi_prev.begin());
    }
    return out;
}

std::vector<CorrelogramEntry> correlogram(const TimeSeries& s, int max_lag) {
    const auto a = acf(s, max_lag);
    const auto p = pacf(s, max_lag);
    std::vector<CorrelogramEntry> out(max_lag);
    for (int k = 0; k < max_lag; ++k) out[k] = {k + 1, a[k], p[k]};
    return out;
}

std::vector<std::pair<double, double>> qq_points(const TimeSeries& s, const QqDist& dist) {
    require_complete(s, "qq_points");
    const auto& v = s.values();
    if (v.size() < 3) throw InsufficientData("qq_points requires n >= 3");
    if (dist.kind == QqDist::StudentT && !(dist.nu > 2.0)) {
        throw DomainError("qq_points: student_t needs nu > 2 for standardization");
    }
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<std::pair<double, double>> pts(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double p = (static_cast<double>(i) + 0.5) / n;
        double q;
        if (dist.kind == QqDist::Normal) {
            q = dist.mu + dist.sigma * math::norm_quantile(p);
        } else {
            q = math::student_t_quantile(p, dist.nu) * std::sqrt((dist.nu - 2.0) / dist.nu);
        }
        pts[i] = {q, sorted[i]};
    }
    return pts;
}

}  // namespace spotvol
