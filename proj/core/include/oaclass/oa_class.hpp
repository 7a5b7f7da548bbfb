#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace oaclass {

// Dimension 3 split of openness provided through the formal channel.
enum class GoldKind : std::uint8_t { FullOA, HybridOA, DelayedOA };

// Dimension 2 for repository copies: deposited before or after formal
// publication. UnknownTiming covers evidence without a usable timestamp or
// declared version.
enum class GreenTiming : std::uint8_t { Preprint, Postprint, UnknownTiming };

// Dimension 4: the user group the hosting repository addresses.
// OtherRepository absorbs aggregator/governmental/undetermined/unregistered
// hosts, keeping the partition total.
enum class GreenHost : std::uint8_t { Institutional, Disciplinary, OtherRepository };

// One cell of the classification scheme. The top-level partition
// Gold / Green / NonOA is total and mutually exclusive; every Green value
// carries both a timing and a host attribute. 13 values in all.
class OAClass {
public:
    static OAClass gold(GoldKind kind) noexcept { return OAClass(Family::Gold, kind, {}, {}); }
    static OAClass green(GreenTiming timing, GreenHost host) noexcept {
        return OAClass(Family::Green, {}, timing, host);
    }
    static OAClass non_oa() noexcept { return OAClass(Family::NonOA, {}, {}, {}); }

    bool is_gold() const noexcept { return family_ == Family::Gold; }
    bool is_green() const noexcept { return family_ == Family::Green; }
    bool is_non_oa() const noexcept { return family_ == Family::NonOA; }

    // Only valid for the matching family.
    GoldKind gold_kind() const noexcept { return gold_; }
    GreenTiming green_timing() const noexcept { return timing_; }
    GreenHost green_host() const noexcept { return host_; }

    // Stable snake_case wire code: "gold_full", "gold_hybrid", "gold_delayed",
    // "green_<preprint|postprint|unknown>_<institutional|disciplinary|other>",
    // "non_oa". Used identically in JSON, CSV and CLI filters.
    std::string_view code() const noexcept;

    static std::optional<OAClass> from_code(std::string_view code) noexcept;

    // Position in the canonical enumeration (report column order).
    int canonical_index() const noexcept;

    auto operator<=>(const OAClass&) const = default;

private:
    enum class Family : std::uint8_t { Gold, Green, NonOA };

    OAClass(Family f, GoldKind g, GreenTiming t, GreenHost h)
        : family_(f), gold_(g), timing_(t), host_(h) {}

    Family family_;
    GoldKind gold_;
    GreenTiming timing_;
    GreenHost host_;
};

// All 13 classes in canonical order: the three Gold kinds, the nine Green
// timing x host combinations, then NonOA.
std::span<const OAClass> all_oa_classes() noexcept;

std::string_view to_string(GoldKind k) noexcept;
std::string_view to_string(GreenTiming t) noexcept;
std::string_view to_string(GreenHost h) noexcept;

} // namespace oaclass
