#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace oaclass {

// Canonical ISSN: "NNNN-NNNC" where C is a digit or 'X'. Construction goes
// through normalize_issn / Issn::parse, which validates the mod-11 check
// digit, so every live Issn value is checksum-valid.
class Issn {
public:
    static Issn parse(std::string_view raw) ;

    const std::string& text() const noexcept { return text_; }

    auto operator<=>(const Issn&) const = default;

private:
    friend Issn normalize_issn(std::string_view raw);
    explicit Issn(std::string canonical) : text_(std::move(canonical)) {}
    std::string text_;
};

// Computes the mod-11 check character (digit or 'X') for the 7 data digits.
char issn_check_char(std::string_view seven_digits);

// Canonicalizes arbitrary text into an Issn. Hyphens, spaces and case are
// ignored; anything that is not exactly 8 ISSN characters raises FormatError,
// a wrong check digit raises ChecksumError.
Issn normalize_issn(std::string_view raw);

} // namespace oaclass
