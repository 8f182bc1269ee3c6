#include "spotvol/timeseries.hpp"

#include <algorithm>
#include <numeric>

namespace spotvol {

TimeSeries::TimeSeries(std::vector<Date> dates, std::vector<double> values, std::string name)
    : dates_(std::move(dates)), values_(std::move(values)), name_(std::move(name)) {
    if (dates_.size() != values_.size()) {
        throw SpecMismatch("series '" + name_ + "': " + std::to_string(dates_.size()) +
                           " dates vs " + std::to_string(values_.size()) + " values");
    }
    if (values_.empty()) throw InsufficientData("series '" + name_ + "' is empty");
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (!(dates_[i - 1] < dates_[i])) {
            throw DuplicateDate("series '" + name_ + "': dates not strictly increasing at row " +
                                std::to_string(i) + " (" + dates_[i].to_string() + ")");
        }
    }
}

bool TimeSeries::has_missing() const {
    return std::any_of(values_.begin(), values_.end(), [](double v) { return is_missing(v); });
}

TimeSeries TimeSeries::with_daily_index(std::vector<double> values, std::string name, Date start) {
    std::vector<Date> dates(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) dates[i] = start + static_cast<std::int64_t>(i);
    return TimeSeries(std::move(dates), std::move(values), std::move(name));
}

TimeSeries impute_missing(const TimeSeries& s, int max_gap) {
    if (max_gap < 1) throw DomainError("max_gap must be positive");
    const auto& v = s.values();
    if (TimeSeries::is_missing(v.front()) || TimeSeries::is_missing(v.back())) {
        throw EndpointMissing("series '" + s.name() + "': first and last values must be observed");
    }
    std::vector<double> out = v;
    std::size_t i = 0;
    while (i < out.size()) {
        if (!TimeSeries::is_missing(out[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < out.size() && TimeSeries::is_missing(out[j])) ++j;
        const std::size_t gap = j - i;
        if (gap > static_cast<std::size_t>(max_gap)) {
            throw GapTooLarge("series '" + s.name() + "': missing run of " + std::to_string(gap) +
                              " at " + s.date(i).to_string() + " exceeds max_gap " +
                              std::to_string(max_gap));
        }
        const double lo = out[i - 1];
        const double hi = out[j];
        for (std::size_t t = i; t < j; ++t) {
            const double w = static_cast<double>(t - i + 1) / static_cast<double>(gap + 1);
            out[t] = lo + w * (hi - lo);
        }
        i = j;
    }
    return TimeSeries(s.dates(), std::move(out), s.name());
}

TimeSeries transform(const TimeSeries& s, TransformKind kind, int span) {
    if (s.has_missing()) throw DomainError("transform requires a complete series; impute first");
    const auto& v = s.values();
    const auto& d = s.dates();
    switch (kind) {
        case TransformKind::Log: {
            std::vector<double> out(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!(v[i] > 0.0)) {
                    throw DomainError("log transform: non-positive value " + std::to_string(v[i]) +
                                      " at " + d[i].to_string());
                }
                out[i] = std::log(v[i]);
            }
            return TimeSeries(d, std::move(out), "log(" + s.name() + ")");
        }
        case TransformKind::Diff: {
            if (v.size() < 2) throw InsufficientData("diff requires at least 2 observations");
            std::vector<double> out(v.size() - 1);
            std::vector<Date> dd(d.begin() + 1, d.end());
            for (std::size_t i = 1; i < v.size(); ++i) out[i - 1] = v[i] - v[i - 1];
            return TimeSeries(std::move(dd), std::move(out), "d(" + s.name() + ")");
        }
        case TransformKind::LogReturn: {
            if (v.size() < 2) throw InsufficientData("log_return requires at least 2 observations");
            std::vector<double> out(v.size() - 1);
            std::vector<Date> dd(d.begin() + 1, d.end());
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!(v[i] > 0.0)) {
                    throw DomainError("log_return: non-positive value at " + d[i].to_string());
                }
            }
            for (std::size_t i = 1; i < v.size(); ++i) out[i - 1] = std::log(v[i] / v[i - 1]);
            return TimeSeries(std::move(dd), std::move(out), "dlog(" + s.name() + ")");
        }
        case TransformKind::EwmaSmooth: {
            if (span < 1) throw DomainError("ewma_smooth requires span >= 1");
            const double alpha = 2.0 / (span + 1.0);
            std::vector<double> out(v.size());
            out[0] = v[0];  // first smoothed value equals first observation
            for (std::size_t i = 1; i < v.size(); ++i) {
                out[i] = alpha * v[i] + (1.0 - alpha) * out[i - 1];
            }
            return TimeSeries(d, std::move(out), "ewma" + std::to_string(span) + "(" + s.name() + ")");
        }
    }
    throw DomainError("unknown transform kind");
}

void require_aligned(const TimeSeries& x, const TimeSeries& y) {
    if (x.dates() != y.dates()) {
        throw AlignmentError("series '" + x.name() + "' and '" + y.name() +
                             "' are not on an identical date index");
    }
}

}  // namespace spotvol
