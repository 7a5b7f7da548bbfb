#include "oaclass/classifier.hpp"

#include <algorithm>

#include "oaclass/errors.hpp"
#include "oaclass/text.hpp"
#include "oaclass/url.hpp"

namespace oaclass {

std::vector<std::string> ClassifierConfig::default_open_license_patterns() {
    return {
        "creativecommons.org/licenses/*",
        "creativecommons.org/publicdomain/*",
    };
}

std::vector<std::string> ClassifierConfig::default_unlawful_host_denylist() {
    return {
        "sci-hub.",
        "scihub.",
        "researchgate.net",
        "academia.edu",
    };
}

std::vector<OAClass> ClassifierConfig::default_precedence() {
    return {
        OAClass::gold(GoldKind::FullOA),
        OAClass::gold(GoldKind::HybridOA),
        OAClass::gold(GoldKind::DelayedOA),
        OAClass::green(GreenTiming::Postprint, GreenHost::Disciplinary),
        OAClass::green(GreenTiming::Postprint, GreenHost::Institutional),
        OAClass::green(GreenTiming::Postprint, GreenHost::OtherRepository),
        OAClass::green(GreenTiming::UnknownTiming, GreenHost::Disciplinary),
        OAClass::green(GreenTiming::UnknownTiming, GreenHost::Institutional),
        OAClass::green(GreenTiming::UnknownTiming, GreenHost::OtherRepository),
        OAClass::green(GreenTiming::Preprint, GreenHost::Disciplinary),
        OAClass::green(GreenTiming::Preprint, GreenHost::Institutional),
        OAClass::green(GreenTiming::Preprint, GreenHost::OtherRepository),
        OAClass::non_oa(),
    };
}

void ClassifierConfig::validate() const {
    if (immediate_grace_days < 0)
        throw ConfigError("immediate_grace_days must be >= 0");
    if (precedence.size() != all_oa_classes().size())
        throw ConfigError("precedence must list all " +
                          std::to_string(all_oa_classes().size()) + " classes, got " +
                          std::to_string(precedence.size()));
    for (const auto& cls : all_oa_classes())
        if (std::count(precedence.begin(), precedence.end(), cls) != 1)
            throw ConfigError("precedence must contain '" + std::string(cls.code()) +
                              "' exactly once");
}

namespace {

// Glob match where '*' matches any run of characters.
bool glob_match(std::string_view text, std::string_view pattern) {
    if (pattern.empty())
        return text.empty();
    const auto star = pattern.find('*');
    if (star == std::string_view::npos)
        return text == pattern;
    if (!text.starts_with(pattern.substr(0, star)))
        return false;
    text.remove_prefix(star);
    pattern.remove_prefix(star + 1);
    if (pattern.empty())
        return true;
    for (std::size_t skip = 0; skip <= text.size(); ++skip)
        if (glob_match(text.substr(skip), pattern))
            return true;
    return false;
}

std::string normalize_license_url(std::string_view url) {
    std::string normalized = normalize_url(url);
    while (normalized.ends_with('/'))
        normalized.pop_back();
    return normalized;
}

bool denylisted(std::string_view url, const std::vector<std::string>& denylist) {
    const std::string normalized = normalize_url(url);
    for (const auto& prefix : denylist)
        if (url_has_prefix(normalized, normalize_url(prefix)))
            return true;
    return false;
}

} // namespace

bool match_license(std::string_view url, const std::vector<std::string>& patterns) {
    const std::string normalized = normalize_license_url(url);
    for (const auto& pattern : patterns)
        if (glob_match(normalized, normalize_license_url(pattern)))
            return true;
    return false;
}

std::int64_t effective_delay_days(const LicenseStatement& license,
                                  const PartialDate& publication_date) {
    if (license.delay_days)
        return *license.delay_days;
    if (license.start_date)
        return days_between_conservative(publication_date, *license.start_date);
    return 0;
}

GoldOutcome classify_gold(const EvidenceBundle& bundle, const ClassifierConfig& config) {
    GoldOutcome outcome;
    const PartialDate& published = bundle.record.publication_date;

    // Evidence scans shared by several rules.
    std::vector<std::size_t> immediate_open, delayed_open;
    for (std::size_t i = 0; i < bundle.publisher_licenses.size(); ++i) {
        const auto& license = bundle.publisher_licenses[i];
        if (!match_license(license.url, config.open_license_patterns))
            continue;
        if (effective_delay_days(license, published) <= config.immediate_grace_days)
            immediate_open.push_back(i);
        else
            delayed_open.push_back(i);
    }
    outcome.open_license_present = !immediate_open.empty() || !delayed_open.empty();

    for (const auto& location : bundle.locations)
        if (location.host_kind == LocationHostKind::PublisherSite)
            outcome.publisher_availability = true;

    bool in_delayed_set = false;
    for (const auto& issn : bundle.record.issns)
        if (config.delayed_journal_set.contains(issn))
            in_delayed_set = true;

    const bool pmc_embargoed = bundle.full_oa_match && bundle.full_oa_match->is_pmc_embargoed();

    // Rule 1: a registry match that actually grants full OA wins outright;
    // contradicting delay signals are logged, not honored (curated registries
    // outrank per-record metadata).
    if (bundle.full_oa_match && bundle.full_oa_match->grants_full_oa()) {
        outcome.label = OAClass::gold(GoldKind::FullOA);
        outcome.evidence_refs.push_back(
            "registry:" + (bundle.full_oa_match->entry.issn_l
                               ? bundle.full_oa_match->entry.issn_l->text()
                               : bundle.full_oa_match->entry.issns.begin()->text()));
        if (!delayed_open.empty() || in_delayed_set)
            outcome.diagnostics.push_back(
                "registry full-OA match contradicts delayed-access signals; registry wins");
        return outcome;
    }

    // Rule 2: an open publisher license effective within the grace period.
    if (!immediate_open.empty()) {
        outcome.label = OAClass::gold(GoldKind::HybridOA);
        for (const std::size_t i : immediate_open)
            outcome.evidence_refs.push_back("license:" + std::to_string(i));
        return outcome;
    }

    // Rule 3: delayed access via the delayed-journal registry, an open
    // license past the grace period, or a PMC embargo.
    if (in_delayed_set || !delayed_open.empty() || pmc_embargoed) {
        outcome.label = OAClass::gold(GoldKind::DelayedOA);
        if (in_delayed_set)
            outcome.evidence_refs.push_back("delayed_set:" +
                                            bundle.record.issns.begin()->text());
        for (const std::size_t i : delayed_open)
            outcome.evidence_refs.push_back("license:" + std::to_string(i));
        if (pmc_embargoed)
            outcome.evidence_refs.push_back(
                "pmc_embargo:" + (bundle.full_oa_match->entry.issn_l
                                      ? bundle.full_oa_match->entry.issn_l->text()
                                      : bundle.full_oa_match->entry.issns.begin()->text()));
        return outcome;
    }

    return outcome;
}

GreenOutcome classify_green(const EvidenceBundle& bundle, const RepositoryRegistry& repositories,
                            const ClassifierConfig& config) {
    GreenOutcome outcome;
    const PartialDate& published = bundle.record.publication_date;

    for (std::size_t i = 0; i < bundle.locations.size(); ++i) {
        const auto& location = bundle.locations[i];
        if (location.host_kind != LocationHostKind::Repository)
            continue;
        if (denylisted(location.url, config.unlawful_host_denylist))
            continue;

        GreenHost host;
        switch (repositories.classify_host(location.url)) {
        case HostClass::Institutional:
            host = GreenHost::Institutional;
            break;
        case HostClass::Disciplinary:
            host = GreenHost::Disciplinary;
            break;
        default:
            host = GreenHost::OtherRepository;
            break;
        }

        GreenTiming timing;
        if (location.deposit_timestamp) {
            // Deposits on the publication day count as preprints: same-day
            // deposits most plausibly precede the formal release.
            timing = compare_conservative(*location.deposit_timestamp, published) <= 0
                         ? GreenTiming::Preprint
                         : GreenTiming::Postprint;
        } else {
            switch (location.declared_version) {
            case DeclaredVersion::SubmittedVersion:
                timing = GreenTiming::Preprint;
                break;
            case DeclaredVersion::AcceptedVersion:
            case DeclaredVersion::PublishedVersion:
                timing = GreenTiming::Postprint;
                break;
            case DeclaredVersion::Unknown:
                timing = GreenTiming::UnknownTiming;
                break;
            }
        }

        outcome.labels.insert(OAClass::green(timing, host));
        outcome.evidence_refs.push_back("location:" + std::to_string(i));
        if (location.license &&
            match_license(location.license->url, config.open_license_patterns))
            outcome.open_license_present = true;
    }
    return outcome;
}

OAClassification classify(const EvidenceBundle& bundle, const RepositoryRegistry& repositories,
                          const ClassifierConfig& config) {
    const GoldOutcome gold = classify_gold(bundle, config);
    const GreenOutcome green = classify_green(bundle, repositories, config);

    std::set<OAClass> labels = green.labels;
    if (gold.label)
        labels.insert(*gold.label);

    std::vector<std::string> evidence_refs = gold.evidence_refs;
    evidence_refs.insert(evidence_refs.end(), green.evidence_refs.begin(),
                         green.evidence_refs.end());
    std::vector<std::string> diagnostics = gold.diagnostics;
    diagnostics.insert(diagnostics.end(), bundle.diagnostics.begin(), bundle.diagnostics.end());

    if (labels.empty())
        return OAClassification::create({OAClass::non_oa()}, OAClass::non_oa(),
                                        AccessMode::Closed, {}, std::move(diagnostics));

    OAClass primary = *labels.begin();
    for (const auto& cls : config.precedence)
        if (labels.contains(cls)) {
            primary = cls;
            break;
        }

    const AccessMode mode = (gold.open_license_present || green.open_license_present)
                                ? AccessMode::Libre
                                : AccessMode::Gratis;
    return OAClassification::create(std::move(labels), primary, mode, std::move(evidence_refs),
                                    std::move(diagnostics));
}

bool publisher_open_evidence(const EvidenceBundle& bundle, const ClassifierConfig& config) {
    for (const auto& license : bundle.publisher_licenses)
        if (match_license(license.url, config.open_license_patterns))
            return true;
    for (const auto& location : bundle.locations)
        if (location.host_kind == LocationHostKind::PublisherSite)
            return true;
    return false;
}

} // namespace oaclass
