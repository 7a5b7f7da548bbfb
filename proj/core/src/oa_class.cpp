#include "oaclass/oa_class.hpp"

namespace oaclass {

namespace {

constexpr std::array<std::string_view, 13> kCodes = {
    "gold_full",
    "gold_hybrid",
    "gold_delayed",
    "green_preprint_institutional",
    "green_preprint_disciplinary",
    "green_preprint_other",
    "green_postprint_institutional",
    "green_postprint_disciplinary",
    "green_postprint_other",
    "green_unknown_institutional",
    "green_unknown_disciplinary",
    "green_unknown_other",
    "non_oa",
};

std::array<OAClass, 13> build_all() {
    std::array<OAClass, 13> all = {
        OAClass::gold(GoldKind::FullOA),
        OAClass::gold(GoldKind::HybridOA),
        OAClass::gold(GoldKind::DelayedOA),
        OAClass::green(GreenTiming::Preprint, GreenHost::Institutional),
        OAClass::green(GreenTiming::Preprint, GreenHost::Disciplinary),
        OAClass::green(GreenTiming::Preprint, GreenHost::OtherRepository),
        OAClass::green(GreenTiming::Postprint, GreenHost::Institutional),
        OAClass::green(GreenTiming::Postprint, GreenHost::Disciplinary),
        OAClass::green(GreenTiming::Postprint, GreenHost::OtherRepository),
        OAClass::green(GreenTiming::UnknownTiming, GreenHost::Institutional),
        OAClass::green(GreenTiming::UnknownTiming, GreenHost::Disciplinary),
        OAClass::green(GreenTiming::UnknownTiming, GreenHost::OtherRepository),
        OAClass::non_oa(),
    };
    return all;
}

const std::array<OAClass, 13>& all_classes_storage() {
    static const std::array<OAClass, 13> all = build_all();
    return all;
}

} // namespace

int OAClass::canonical_index() const noexcept {
    switch (family_) {
    case Family::Gold:
        return static_cast<int>(gold_);
    case Family::Green:
        return 3 + static_cast<int>(timing_) * 3 + static_cast<int>(host_);
    case Family::NonOA:
        return 12;
    }
    return 12;
}

std::string_view OAClass::code() const noexcept {
    return kCodes[static_cast<std::size_t>(canonical_index())];
}

std::optional<OAClass> OAClass::from_code(std::string_view code) noexcept {
    const auto& all = all_classes_storage();
    for (std::size_t i = 0; i < kCodes.size(); ++i)
        if (kCodes[i] == code)
            return all[i];
    return std::nullopt;
}

std::span<const OAClass> all_oa_classes() noexcept { return all_classes_storage(); }

std::string_view to_string(GoldKind k) noexcept {
    switch (k) {
    case GoldKind::FullOA:
        return "full";
    case GoldKind::HybridOA:
        return "hybrid";
    case GoldKind::DelayedOA:
        return "delayed";
    }
    return "full";
}

std::string_view to_string(GreenTiming t) noexcept {
    switch (t) {
    case GreenTiming::Preprint:
        return "preprint";
    case GreenTiming::Postprint:
        return "postprint";
    case GreenTiming::UnknownTiming:
        return "unknown";
    }
    return "unknown";
}

std::string_view to_string(GreenHost h) noexcept {
    switch (h) {
    case GreenHost::Institutional:
        return "institutional";
    case GreenHost::Disciplinary:
        return "disciplinary";
    case GreenHost::OtherRepository:
        return "other";
    }
    return "other";
}

} // namespace oaclass
