#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "oaclass/oa_class.hpp"

namespace oaclass {

// Labels circulating in the literature, each mapped onto the classification
// scheme where it has a home, or documented as unmappable with the reason.
enum class LegacyName {
    Platinum,
    Diamond,
    Gray,
    Bronze,
    Transient,
    Guerilla,
    Black,
    RobinHood,
    Blue,
    Yellow,
    White,
    Hybrid,
    Delayed,
};

struct LegacyLabel {
    LegacyName name;
    std::string_view display_name;
    std::optional<OAClass> mapping;
    std::string_view note;
};

// The full documented lexicon (13 labels, each exactly once).
std::span<const LegacyLabel> legacy_lexicon() noexcept;

const LegacyLabel& legacy_lookup(LegacyName name) noexcept;

} // namespace oaclass
