#include "oaclass/legacy.hpp"

#include <array>

namespace oaclass {

namespace {

const std::array<LegacyLabel, 13>& lexicon_storage() {
    static const std::array<LegacyLabel, 13> lexicon = {{
        {LegacyName::Platinum, "Platinum OA", OAClass::gold(GoldKind::FullOA),
         "Fully open journal without publication fees; fee status is out of scope here, so it "
         "lands in the full-OA class."},
        {LegacyName::Diamond, "Diamond OA", OAClass::gold(GoldKind::FullOA),
         "Alternative name for fee-free fully open journals; fee status is out of scope here, so "
         "it lands in the full-OA class."},
        {LegacyName::Gray, "Gray OA", OAClass::gold(GoldKind::FullOA),
         "Fully open journal that is not listed in DOAJ; same class, weaker registry evidence."},
        {LegacyName::Bronze, "Bronze OA", std::nullopt,
         "Free to read on the publisher site without any license for reuse; gold-family access "
         "with access_mode=gratis, no dedicated class."},
        {LegacyName::Transient, "Transient OA", std::nullopt,
         "Openly available only for a limited period; requires longitudinal observation, which a "
         "single evidence snapshot cannot express."},
        {LegacyName::Guerilla, "Guerilla OA", std::nullopt,
         "Free availability through copyright infringement; fails the lawfulness requirement and "
         "is never classified green."},
        {LegacyName::Black, "Black OA", std::nullopt,
         "Free availability through copyright infringement (e.g. Sci-Hub); fails the lawfulness "
         "requirement and is never classified green."},
        {LegacyName::RobinHood, "Robin Hood OA", std::nullopt,
         "Free availability through copyright infringement; fails the lawfulness requirement and "
         "is never classified green."},
        {LegacyName::Blue, "Blue OA", std::nullopt,
         "Publisher self-archiving policy permitting postprint deposit; a policy attribute, not a "
         "state of a publication."},
        {LegacyName::Yellow, "Yellow OA", std::nullopt,
         "Publisher self-archiving policy permitting preprint deposit; a policy attribute, not a "
         "state of a publication."},
        {LegacyName::White, "White OA", std::nullopt,
         "Publisher policy that does not support self-archiving; a policy attribute, not a state "
         "of a publication."},
        {LegacyName::Hybrid, "Hybrid OA", OAClass::gold(GoldKind::HybridOA),
         "Individual article opened in an otherwise subscription journal, typically against an "
         "article processing charge."},
        {LegacyName::Delayed, "Delayed OA / Moving Wall OA", OAClass::gold(GoldKind::DelayedOA),
         "Freely available after an embargo period, usually between six and 24 months."},
    }};
    return lexicon;
}

} // namespace

std::span<const LegacyLabel> legacy_lexicon() noexcept { return lexicon_storage(); }

const LegacyLabel& legacy_lookup(LegacyName name) noexcept {
    for (const auto& label : lexicon_storage())
        if (label.name == name)
            return label;
    return lexicon_storage().front();
}

} // namespace oaclass
