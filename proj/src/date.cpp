#include "spotvol/date.hpp"

#include <cctype>
#include <charconv>

namespace spotvol {

namespace {

bool parse_int(const std::string& text, std::size_t begin, std::size_t end, int& out) {
    if (begin >= end || end > text.size()) return false;
    for (std::size_t i = begin; i < end; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    }
    const auto res = std::from_chars(text.data() + begin, text.data() + end, out);
    return res.ec == std::errc() && res.ptr == text.data() + end;
}

}  // namespace

Date Date::parse_iso(const std::string& text) {
    int y = 0, m = 0, d = 0;
    const bool ok = text.size() == 10 && text[4] == '-' && text[7] == '-' &&
                    parse_int(text, 0, 4, y) && parse_int(text, 5, 7, m) && parse_int(text, 8, 10, d);
    if (!ok) throw ParseError("expected ISO date YYYY-MM-DD, got '" + text + "'");
    return from_ymd(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

std::string Date::to_string() const {
    const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{serial_}}};
    char buf[11];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return std::string(buf);
}

}  // namespace spotvol
