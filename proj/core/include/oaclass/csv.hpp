#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace oaclass {

// RFC-4180 CSV over UTF-8 byte streams. Quoted fields may contain commas,
// doubled quotes and embedded line breaks; records end at LF or CRLF.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Next record, or nullopt at end of input. Throws ParseError on a stray
    // quote or an unterminated quoted field; line() reports the 1-based line
    // the current record started on.
    std::optional<std::vector<std::string>> next();

    std::size_t line() const noexcept { return record_start_line_; }

private:
    std::istream& in_;
    std::size_t current_line_ = 1;
    std::size_t record_start_line_ = 1;
};

// Writes one record with minimal RFC-4180 quoting and a trailing LF.
void write_csv_record(std::ostream& out, const std::vector<std::string>& fields);

std::string csv_escape(const std::string& field);

} // namespace oaclass
