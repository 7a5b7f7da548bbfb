#pragma once

#include <string>
#include <string_view>

namespace oaclass {

// Matching key for publication/journal titles: ASCII lowercase, ASCII
// punctuation mapped to spaces, whitespace runs collapsed, ends trimmed.
// Idempotent. Non-ASCII bytes pass through untouched.
std::string normalize_title(std::string_view title);

std::string to_lower_ascii(std::string_view s);

std::string_view trim_view(std::string_view s);

} // namespace oaclass
