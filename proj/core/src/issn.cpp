#include "oaclass/issn.hpp"

#include <cctype>

#include "oaclass/errors.hpp"

namespace oaclass {

char issn_check_char(std::string_view seven_digits) {
    int sum = 0;
    for (int i = 0; i < 7; ++i)
        sum += (seven_digits[i] - '0') * (8 - i);
    const int rem = sum % 11;
    const int check = (11 - rem) % 11;
    return check == 10 ? 'X' : static_cast<char>('0' + check);
}

Issn Issn::parse(std::string_view raw) { return normalize_issn(raw); }

Issn normalize_issn(std::string_view raw) {
    std::string digits;
    digits.reserve(8);
    for (const char c : raw) {
        if (c == '-' || std::isspace(static_cast<unsigned char>(c)))
            continue;
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
        } else if (c == 'x' || c == 'X') {
            digits.push_back('X');
        } else {
            throw FormatError("invalid ISSN character '" + std::string(1, c) + "' in '" +
                              std::string(raw) + "'");
        }
    }
    if (digits.size() != 8)
        throw FormatError("ISSN must have 8 characters, got " + std::to_string(digits.size()) +
                          " in '" + std::string(raw) + "'");
    for (int i = 0; i < 7; ++i)
        if (digits[i] == 'X')
            throw FormatError("'X' is only valid as the ISSN check character: '" + std::string(raw) +
                              "'");
    const char expected = issn_check_char(std::string_view(digits).substr(0, 7));
    if (digits[7] != expected)
        throw ChecksumError("ISSN check digit mismatch in '" + std::string(raw) + "': expected '" +
                            std::string(1, expected) + "', got '" + std::string(1, digits[7]) + "'");
    return Issn(digits.substr(0, 4) + "-" + digits.substr(4));
}

} // namespace oaclass
