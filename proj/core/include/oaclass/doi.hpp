#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace oaclass {

// Canonical DOI: lowercase, no resolver prefix, "10.<registrant>/<suffix>".
// DOIs are case-insensitive by definition, so the canonical form is the
// comparison key.
class Doi {
public:
    static Doi parse(std::string_view raw);

    const std::string& value() const noexcept { return value_; }

    auto operator<=>(const Doi&) const = default;

private:
    friend Doi normalize_doi(std::string_view raw);
    explicit Doi(std::string value) : value_(std::move(value)) {}
    std::string value_;
};

// Strips resolver prefixes ("doi:", "info:doi/", "http(s)://(dx.|www.)doi.org/"),
// trims whitespace and lowercases. FormatError when the remainder does not
// start with "10." or lacks a registrant/suffix split.
Doi normalize_doi(std::string_view raw);

} // namespace oaclass
