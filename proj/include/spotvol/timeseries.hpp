#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "spotvol/date.hpp"
#include "spotvol/errors.hpp"

namespace spotvol {

// Date-indexed daily observations. Immutable after construction. Missing
// entries are carried as NaN until impute_missing() fills them; every
// numerical operation on a series requires complete data and says so.
class TimeSeries {
public:
    TimeSeries(std::vector<Date> dates, std::vector<double> values, std::string name = "");

    const std::vector<Date>& dates() const { return dates_; }
    const std::vector<double>& values() const { return values_; }
    const std::string& name() const { return name_; }
    std::size_t size() const { return values_.size(); }

    double value(std::size_t i) const { return values_[i]; }
    const Date& date(std::size_t i) const { return dates_[i]; }

    static bool is_missing(double v) { return std::isnan(v); }
    bool has_missing() const;

    TimeSeries renamed(std::string name) const { return TimeSeries(dates_, values_, std::move(name)); }

    // Convenience for synthetic data: consecutive days starting at `start`.
    static TimeSeries with_daily_index(std::vector<double> values, std::string name = "",
                                       Date start = Date::from_ymd(2004, 1, 1));

private:
    std::vector<Date> dates_;
    std::vector<double> values_;
    std::string name_;
};

// Replaces missing runs of length <= max_gap by linear interpolation between
// the bounding observed values. Longer runs raise GapTooLarge; a missing
// first or last observation raises EndpointMissing.
TimeSeries impute_missing(const TimeSeries& s, int max_gap);

enum class TransformKind { Log, Diff, LogReturn, EwmaSmooth };

// Log, first difference, log return, or exponential smoothing with factor
// 2/(span+1). Diff and LogReturn drop the first observation.
TimeSeries transform(const TimeSeries& s, TransformKind kind, int span = 0);

// Requires both series on an identical date index.
void require_aligned(const TimeSeries& x, const TimeSeries& y);

}  // namespace spotvol
