#pragma once

#include <string>
#include <string_view>

namespace oaclass {

// Matching form for evidence and registry URLs: scheme, userinfo, port,
// query and fragment dropped; host lowercased, leading "www." removed; path
// kept verbatim. Applied to both sides of every prefix match. Idempotent.
//   "HTTPS://www.ArXiv.org:443/abs/1901.00001?x=1#f" -> "arxiv.org/abs/1901.00001"
std::string normalize_url(std::string_view url);

// True when `normalized_url` falls under `normalized_prefix`. A prefix that
// ends in '/' or '.' matches as a plain prefix; otherwise the match must end
// at a host/path boundary, so "arxiv.org" matches "arxiv.org/abs/x" but not
// "arxiv.org.evil.com/x".
bool url_has_prefix(std::string_view normalized_url, std::string_view normalized_prefix);

// Percent-encodes a string for use as a single URL path segment.
std::string encode_path_segment(std::string_view s);

} // namespace oaclass
