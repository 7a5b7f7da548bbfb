#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace oaclass {

enum class DatePrecision { Year, YearMonth, Day };

// Calendar date with explicit precision. Bibliographic sources routinely
// supply only a year or a year-month; the precision is part of the value and
// survives serialization ("2018", "2018-02", "2018-02-15").
class PartialDate {
public:
    static PartialDate of_year(int year);
    static PartialDate of_month(int year, unsigned month);
    static PartialDate of_day(int year, unsigned month, unsigned day);

    // Accepts "YYYY", "YYYY-MM", "YYYY-MM-DD". Throws FormatError otherwise
    // (including calendar-invalid dates such as 2019-02-30).
    static PartialDate parse(std::string_view text);

    // Crossref-style date-parts: [y], [y,m] or [y,m,d].
    static PartialDate from_date_parts(std::span<const int> parts);

    int year() const noexcept { return year_; }
    std::optional<unsigned> month() const noexcept { return month_; }
    std::optional<unsigned> day() const noexcept { return day_; }
    DatePrecision precision() const noexcept;

    std::string to_string() const;

    // Serial day number of this date truncated to `prec` (missing month/day
    // become January / the 1st). Proleptic Gregorian, epoch 1970-01-01.
    std::int64_t serial_day_at(DatePrecision prec) const;

    // Exact field equality (same precision and same components).
    bool operator==(const PartialDate&) const = default;

private:
    PartialDate(int y, std::optional<unsigned> m, std::optional<unsigned> d)
        : year_(y), month_(m), day_(d) {}

    int year_;
    std::optional<unsigned> month_;
    std::optional<unsigned> day_;
};

// The coarser of the two precisions.
DatePrecision coarsest(DatePrecision a, DatePrecision b);

// Three-way comparison after truncating both dates to their coarsest common
// precision. This is the library-wide rule for mixed-precision comparisons:
// a year-only date compares as January 1st against another year-only date's
// January 1st, never against a finer date's real day.
std::strong_ordering compare_conservative(const PartialDate& a, const PartialDate& b);

// Signed day count b - a after truncating both to the coarsest common
// precision (month precision compares month starts, year precision compares
// January 1sts).
std::int64_t days_between_conservative(const PartialDate& a, const PartialDate& b);

// Minimum of the given dates at their coarsest common precision; the result
// carries that coarsest precision. Empty input -> nullopt.
std::optional<PartialDate> earliest_date(std::span<const PartialDate> dates);

} // namespace oaclass
