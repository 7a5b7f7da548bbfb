#include "oaclass/dates.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>

#include "oaclass/errors.hpp"

namespace oaclass {

namespace {

bool valid_ymd(int y, unsigned m, unsigned d) {
    return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m},
                                       std::chrono::day{d}}
        .ok();
}

int parse_int_field(std::string_view text, std::string_view what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw FormatError("invalid " + std::string(what) + " in date: '" + std::string(text) + "'");
    return value;
}

} // namespace

PartialDate PartialDate::of_year(int year) {
    if (year < 0 || year > 9999)
        throw FormatError("year out of range: " + std::to_string(year));
    return PartialDate(year, std::nullopt, std::nullopt);
}

PartialDate PartialDate::of_month(int year, unsigned month) {
    if (!valid_ymd(year, month, 1))
        throw FormatError("invalid year-month: " + std::to_string(year) + "-" + std::to_string(month));
    return PartialDate(year, month, std::nullopt);
}

PartialDate PartialDate::of_day(int year, unsigned month, unsigned day) {
    if (!valid_ymd(year, month, day))
        throw FormatError("invalid date: " + std::to_string(year) + "-" + std::to_string(month) + "-" +
                          std::to_string(day));
    return PartialDate(year, month, day);
}

PartialDate PartialDate::parse(std::string_view text) {
    if (text.size() == 4)
        return of_year(parse_int_field(text, "year"));
    if (text.size() == 7 && text[4] == '-')
        return of_month(parse_int_field(text.substr(0, 4), "year"),
                        static_cast<unsigned>(parse_int_field(text.substr(5, 2), "month")));
    if (text.size() == 10 && text[4] == '-' && text[7] == '-')
        return of_day(parse_int_field(text.substr(0, 4), "year"),
                      static_cast<unsigned>(parse_int_field(text.substr(5, 2), "month")),
                      static_cast<unsigned>(parse_int_field(text.substr(8, 2), "day")));
    throw FormatError("unrecognized date format: '" + std::string(text) + "'");
}

PartialDate PartialDate::from_date_parts(std::span<const int> parts) {
    if (parts.empty())
        throw FormatError("empty date-parts");
    if (parts.size() == 1)
        return of_year(parts[0]);
    if (parts.size() == 2)
        return of_month(parts[0], static_cast<unsigned>(parts[1]));
    return of_day(parts[0], static_cast<unsigned>(parts[1]), static_cast<unsigned>(parts[2]));
}

DatePrecision PartialDate::precision() const noexcept {
    if (day_)
        return DatePrecision::Day;
    if (month_)
        return DatePrecision::YearMonth;
    return DatePrecision::Year;
}

std::string PartialDate::to_string() const {
    char buf[16];
    if (day_)
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year_, *month_, *day_);
    else if (month_)
        std::snprintf(buf, sizeof buf, "%04d-%02u", year_, *month_);
    else
        std::snprintf(buf, sizeof buf, "%04d", year_);
    return buf;
}

std::int64_t PartialDate::serial_day_at(DatePrecision prec) const {
    unsigned m = 1, d = 1;
    if (prec != DatePrecision::Year && month_)
        m = *month_;
    if (prec == DatePrecision::Day && day_)
        d = *day_;
    const std::chrono::year_month_day ymd{std::chrono::year{year_}, std::chrono::month{m},
                                          std::chrono::day{d}};
    return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

DatePrecision coarsest(DatePrecision a, DatePrecision b) {
    return static_cast<int>(a) < static_cast<int>(b) ? a : b;
}

std::strong_ordering compare_conservative(const PartialDate& a, const PartialDate& b) {
    const DatePrecision prec = coarsest(a.precision(), b.precision());
    return a.serial_day_at(prec) <=> b.serial_day_at(prec);
}

std::int64_t days_between_conservative(const PartialDate& a, const PartialDate& b) {
    const DatePrecision prec = coarsest(a.precision(), b.precision());
    return b.serial_day_at(prec) - a.serial_day_at(prec);
}

std::optional<PartialDate> earliest_date(std::span<const PartialDate> dates) {
    if (dates.empty())
        return std::nullopt;
    DatePrecision prec = dates.front().precision();
    for (const auto& d : dates)
        prec = coarsest(prec, d.precision());
    const PartialDate* best = &dates.front();
    for (const auto& d : dates)
        if (d.serial_day_at(prec) < best->serial_day_at(prec))
            best = &d;
    // Re-truncate the winner so the result carries the common precision.
    switch (prec) {
    case DatePrecision::Year:
        return PartialDate::of_year(best->year());
    case DatePrecision::YearMonth:
        return PartialDate::of_month(best->year(), best->month().value_or(1));
    case DatePrecision::Day:
        return *best;
    }
    return *best;
}

} // namespace oaclass
