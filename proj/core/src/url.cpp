#include "oaclass/url.hpp"

#include <cctype>

#include "oaclass/text.hpp"

namespace oaclass {

std::string normalize_url(std::string_view url) {
    std::string_view s = trim_view(url);

    if (const auto scheme_end = s.find("://"); scheme_end != std::string_view::npos)
        s.remove_prefix(scheme_end + 3);

    // Cut query/fragment before splitting host and path.
    if (const auto stop = s.find_first_of("?#"); stop != std::string_view::npos)
        s = s.substr(0, stop);

    const auto path_start = s.find('/');
    std::string_view host = s.substr(0, path_start == std::string_view::npos ? s.size() : path_start);
    std::string_view path =
        path_start == std::string_view::npos ? std::string_view{} : s.substr(path_start);

    if (const auto at = host.rfind('@'); at != std::string_view::npos)
        host.remove_prefix(at + 1);
    if (const auto colon = host.find(':'); colon != std::string_view::npos)
        host = host.substr(0, colon);

    std::string out = to_lower_ascii(host);
    if (out.starts_with("www.") && out.size() > 4)
        out.erase(0, 4);
    out.append(path);
    return out;
}

bool url_has_prefix(std::string_view normalized_url, std::string_view normalized_prefix) {
    if (normalized_prefix.empty() || !normalized_url.starts_with(normalized_prefix))
        return false;
    if (normalized_url.size() == normalized_prefix.size())
        return true;
    const char last = normalized_prefix.back();
    if (last == '/' || last == '.')
        return true;
    return normalized_url[normalized_prefix.size()] == '/';
}

std::string encode_path_segment(std::string_view s) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        const auto uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc) || c == '-' || c == '.' || c == '_' || c == '~') {
            out.push_back(c);
        } else {
            out.push_back('%');
            out.push_back(hex[uc >> 4]);
            out.push_back(hex[uc & 0xF]);
        }
    }
    return out;
}

} // namespace oaclass
