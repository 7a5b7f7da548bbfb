#pragma once

// Brute-force re-evaluation of the classification decision table, written
// independently of the library's classifier: plain nested ifs, its own
// license-openness decision (exact URL membership), its own host mapping and
// its own date truncation. Tests compare oaclass::classify against this.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oaclass/classification.hpp"
#include "oaclass/evidence.hpp"
#include "oaclass/oa_class.hpp"

namespace oaclass::testing {

struct OracleEnv {
    int grace_days = 30;
    // Exact license URLs the oracle considers open (the grid controls the
    // universe of URLs, so set membership replaces pattern matching).
    std::set<std::string> open_urls;
    // URL substring -> green host attribute.
    std::vector<std::pair<std::string, GreenHost>> host_rules;
    // URL substrings whose locations are unlawful and contribute nothing.
    std::vector<std::string> denylist_substrings;
    std::vector<OAClass> precedence;
};

inline std::int64_t oracle_serial_day(int y, int m, int d) {
    return std::chrono::sys_days{std::chrono::year_month_day{
                                     std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                     std::chrono::day{unsigned(d)}}}
        .time_since_epoch()
        .count();
}

// Truncates both dates to the coarser precision of the pair, then diffs
// serial days (b - a).
inline std::int64_t oracle_day_diff(const PartialDate& a, const PartialDate& b) {
    const bool year_only = !a.month() || !b.month();
    const bool month_only = !year_only && (!a.day() || !b.day());
    int am = 1, ad = 1, bm = 1, bd = 1;
    if (!year_only) {
        am = static_cast<int>(*a.month());
        bm = static_cast<int>(*b.month());
        if (!month_only) {
            ad = static_cast<int>(*a.day());
            bd = static_cast<int>(*b.day());
        }
    }
    return oracle_serial_day(b.year(), bm, bd) - oracle_serial_day(a.year(), am, ad);
}

inline bool oracle_license_open(const LicenseStatement& license, const OracleEnv& env) {
    return env.open_urls.contains(license.url);
}

inline std::int64_t oracle_license_delay(const LicenseStatement& license,
                                         const PartialDate& published) {
    if (license.delay_days)
        return *license.delay_days;
    if (license.start_date)
        return oracle_day_diff(published, *license.start_date);
    return 0;
}

inline bool oracle_denylisted(const std::string& url, const OracleEnv& env) {
    for (const auto& fragment : env.denylist_substrings)
        if (url.find(fragment) != std::string::npos)
            return true;
    return false;
}

inline GreenHost oracle_host(const std::string& url, const OracleEnv& env) {
    for (const auto& [fragment, host] : env.host_rules)
        if (url.find(fragment) != std::string::npos)
            return host;
    return GreenHost::OtherRepository;
}

inline OAClassification oracle_classify(const EvidenceBundle& bundle, const OracleEnv& env) {
    const PartialDate& published = bundle.record.publication_date;

    // --- gold ---
    std::optional<OAClass> gold;
    bool any_open_publisher_license = false;
    bool open_immediate = false;
    bool open_delayed = false;
    for (const auto& license : bundle.publisher_licenses) {
        if (!oracle_license_open(license, env))
            continue;
        any_open_publisher_license = true;
        if (oracle_license_delay(license, published) <= env.grace_days)
            open_immediate = true;
        else
            open_delayed = true;
    }

    bool registry_full = false;
    bool pmc_embargo = false;
    if (bundle.full_oa_match) {
        if (bundle.full_oa_match->entry.source == RegistrySource::PmcLike &&
            bundle.full_oa_match->entry.pmc_embargo_months.value_or(0) > 0)
            pmc_embargo = true;
        else
            registry_full = true;
    }

    bool in_delayed_set = false;
    // The grid encodes delayed-set membership through a marker diagnostic on
    // the bundle so the oracle needs no access to the classifier config.
    for (const auto& note : bundle.diagnostics)
        if (note == "grid:delayed_set")
            in_delayed_set = true;

    if (registry_full)
        gold = OAClass::gold(GoldKind::FullOA);
    else if (open_immediate)
        gold = OAClass::gold(GoldKind::HybridOA);
    else if (in_delayed_set || open_delayed || pmc_embargo)
        gold = OAClass::gold(GoldKind::DelayedOA);

    // --- green ---
    std::set<OAClass> labels;
    bool green_open_license = false;
    for (const auto& location : bundle.locations) {
        if (location.host_kind != LocationHostKind::Repository)
            continue;
        if (oracle_denylisted(location.url, env))
            continue;
        GreenTiming timing;
        if (location.deposit_timestamp) {
            timing = oracle_day_diff(*location.deposit_timestamp, published) >= 0
                         ? GreenTiming::Preprint
                         : GreenTiming::Postprint;
        } else if (location.declared_version == DeclaredVersion::SubmittedVersion) {
            timing = GreenTiming::Preprint;
        } else if (location.declared_version == DeclaredVersion::AcceptedVersion ||
                   location.declared_version == DeclaredVersion::PublishedVersion) {
            timing = GreenTiming::Postprint;
        } else {
            timing = GreenTiming::UnknownTiming;
        }
        labels.insert(OAClass::green(timing, oracle_host(location.url, env)));
        if (location.license && oracle_license_open(*location.license, env))
            green_open_license = true;
    }

    if (gold)
        labels.insert(*gold);

    if (labels.empty())
        return OAClassification::create({OAClass::non_oa()}, OAClass::non_oa(),
                                        AccessMode::Closed, {});

    OAClass primary = *labels.begin();
    for (const auto& cls : env.precedence)
        if (labels.contains(cls)) {
            primary = cls;
            break;
        }

    const AccessMode mode = (any_open_publisher_license || green_open_license)
                                ? AccessMode::Libre
                                : AccessMode::Gratis;
    return OAClassification::create(labels, primary, mode, {});
}

} // namespace oaclass::testing
