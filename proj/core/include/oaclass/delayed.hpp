#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oaclass/dates.hpp"
#include "oaclass/evidence.hpp"
#include "oaclass/issn.hpp"
#include "oaclass/registries.hpp"

namespace oaclass {

// Thresholds of the cohort-share heuristic. The defaults operationalize
// qualitative guidance: articles older than 24 months sit past every
// conventional embargo, a 0.9 old-cohort share reads as "close to one", a
// 0.5 recent-cohort share as "significantly lower", and 20 articles per
// cohort guard against small-sample noise.
struct CohortConfig {
    int horizon_months = 24;
    int recent_months = 12;
    double theta_old = 0.9;
    double theta_recent = 0.5;
    std::size_t min_cohort = 20;
};

struct CohortCounts {
    std::size_t n = 0;
    std::size_t open = 0;

    double share() const noexcept { return n ? static_cast<double>(open) / n : 0.0; }
};

enum class DelayedVerdict { Delayed, NotDelayed, InsufficientData };

std::string_view to_string(DelayedVerdict v) noexcept;

struct JournalCohortStats {
    Issn issn_l;
    CohortCounts old_cohort;
    CohortCounts recent_cohort;
    DelayedVerdict verdict = DelayedVerdict::InsufficientData;
};

// One article-level observation: publication date (month precision or finer)
// and whether the publisher currently provides open access to it.
struct ArticleObservation {
    PartialDate publication_date;
    bool publisher_open = false;
};

// Cohort-share heuristic: the journal is Delayed when nearly all articles
// older than the horizon are open while the recent year's share is low. The
// journal must not be a registered full-OA journal (RegistryConflictError
// otherwise: the caller skipped its own exclusion step). reference_date is an
// explicit input so runs are reproducible.
JournalCohortStats detect_delayed(const Issn& issn_l,
                                  const std::vector<ArticleObservation>& articles,
                                  const JournalRegistry& registry, const IssnLinkTable& links,
                                  const CohortConfig& config, const PartialDate& reference_date);

// Per-article license timing for the metadata strategy.
struct ArticleLicenseInfo {
    PartialDate publication_date;
    std::vector<LicenseStatement> licenses;
};

// Crossref delay-in-days strategy: when at least half of the open-licensed
// articles only become openly licensed after the grace period, returns the
// median positive effective delay in days (even-sized sets take the lower
// median); otherwise nullopt. Articles without an open license are ignored.
std::optional<int> detect_delayed_from_metadata(const std::vector<ArticleLicenseInfo>& articles,
                                                const std::vector<std::string>& open_license_patterns,
                                                int immediate_grace_days);

// CSV "issn,journal_title,embargo_months" -> embargo per journal. 0 months
// means immediate access. Throws ParseError / ChecksumError.
std::map<Issn, int> load_pmc_embargoes(const std::string& path);

// One journal in the produced delayed-OA registry, annotated with which
// strategies flagged it.
struct DelayedRegistryRow {
    Issn issn_l;
    std::string title;
    bool by_cohort = false;
    bool by_metadata = false;
    bool by_pmc = false;
    std::optional<int> embargo_months;
    std::optional<double> old_share;
    std::optional<double> recent_share;
    std::optional<std::size_t> n_old;
    std::optional<std::size_t> n_recent;

    std::string strategies() const; // "cohort+metadata+pmc" subset, fixed order
};

struct DelayedRegistry {
    std::vector<DelayedRegistryRow> rows;

    // ISSNs usable as ClassifierConfig::delayed_journal_set.
    std::set<Issn> issn_set() const;

    void save(std::ostream& out) const;
    void save(const std::string& path) const;

    static DelayedRegistry load(const std::string& path);
};

// Union of the three strategies. Journals flagged by nothing stay absent;
// embargo lengths come from PMC months when known, else from metadata delays
// (rounded to months).
DelayedRegistry build_delayed_registry(const std::vector<JournalCohortStats>& cohort_verdicts,
                                       const std::map<Issn, int>& metadata_embargo_days,
                                       const std::map<Issn, int>& pmc_embargoes,
                                       const std::map<Issn, std::string>& titles);

} // namespace oaclass
