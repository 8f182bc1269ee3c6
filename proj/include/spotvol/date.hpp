#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>

#include "spotvol/errors.hpp"

namespace spotvol {

// Calendar date at daily resolution, stored as days since 1970-01-01.
class Date {
public:
    Date() = default;
    explicit Date(std::int64_t serial_days) : serial_(serial_days) {}

    static Date from_ymd(int year, unsigned month, unsigned day) {
        const std::chrono::year_month_day ymd{std::chrono::year{year},
                                              std::chrono::month{month},
                                              std::chrono::day{day}};
        if (!ymd.ok()) {
            throw ParseError("invalid calendar date " + std::to_string(year) + "-" +
                             std::to_string(month) + "-" + std::to_string(day));
        }
        return Date(std::chrono::sys_days(ymd).time_since_epoch().count());
    }

    // Parses "YYYY-MM-DD".
    static Date parse_iso(const std::string& text);

    std::int64_t serial() const { return serial_; }

    std::string to_string() const;

    Date operator+(std::int64_t days) const { return Date(serial_ + days); }
    std::int64_t operator-(const Date& other) const { return serial_ - other.serial_; }
    auto operator<=>(const Date&) const = default;

private:
    std::int64_t serial_ = 0;
};

}  // namespace spotvol
