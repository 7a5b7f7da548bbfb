#include "oaclass/doi.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "oaclass/errors.hpp"

namespace oaclass {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool strip_prefix_icase(std::string_view& s, std::string_view prefix) {
    if (s.size() < prefix.size())
        return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i])
            return false;
    s.remove_prefix(prefix.size());
    return true;
}

} // namespace

Doi Doi::parse(std::string_view raw) { return normalize_doi(raw); }

Doi normalize_doi(std::string_view raw) {
    std::string_view s = trim(raw);

    static constexpr std::array<std::string_view, 8> url_prefixes = {
        "https://dx.doi.org/", "http://dx.doi.org/", "https://www.doi.org/",
        "http://www.doi.org/", "https://doi.org/",   "http://doi.org/",
        "info:doi/",           "doi:",
    };
    for (const auto prefix : url_prefixes)
        if (strip_prefix_icase(s, prefix))
            break;
    s = trim(s);

    if (!s.starts_with("10."))
        throw FormatError("DOI must start with '10.': '" + std::string(raw) + "'");
    const auto slash = s.find('/');
    if (slash == std::string_view::npos || slash == 3 || slash + 1 == s.size())
        throw FormatError("DOI lacks a registrant/suffix split: '" + std::string(raw) + "'");

    std::string value(s);
    std::transform(value.begin(), value.end(), value.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return Doi(std::move(value));
}

} // namespace oaclass
