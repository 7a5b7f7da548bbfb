#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oaclass/classification.hpp"
#include "oaclass/evidence.hpp"
#include "oaclass/oa_class.hpp"
#include "oaclass/registries.hpp"

namespace oaclass {

// Tunables of the decision engine. Defaults:
//  - immediate_grace_days = 30: absorbs print/online date skew while staying
//    far below the shortest conventional embargo (6 months);
//  - open_license_patterns cover the Creative Commons license and public
//    domain URL families;
//  - unlawful_host_denylist carries the well-known infringing/social hosts,
//    whose copies never count as green;
//  - precedence ranks gold before green and postprint before preprint, and
//    decides only which label becomes `primary`.
struct ClassifierConfig {
    int immediate_grace_days = 30;
    std::vector<std::string> open_license_patterns = default_open_license_patterns();
    std::vector<std::string> unlawful_host_denylist = default_unlawful_host_denylist();
    std::vector<OAClass> precedence = default_precedence();
    std::set<Issn> delayed_journal_set;

    static std::vector<std::string> default_open_license_patterns();
    static std::vector<std::string> default_unlawful_host_denylist();
    static std::vector<OAClass> default_precedence();

    // Throws ConfigError unless precedence holds every OAClass exactly once.
    void validate() const;
};

// True iff the normalized URL (scheme stripped, trailing slash stripped,
// lowercased) matches any pattern; '*' in a pattern matches any run of
// characters.
bool match_license(std::string_view url, const std::vector<std::string>& patterns);

// Days between the earliest publication date and the moment the license takes
// effect: delay_days verbatim when the statement carries it, otherwise the
// start/publication gap at the coarsest common precision, otherwise 0 (a
// license without timing applies from publication).
std::int64_t effective_delay_days(const LicenseStatement& license,
                                  const PartialDate& publication_date);

// Outcome of the gold (formal channel) rules for one bundle.
struct GoldOutcome {
    std::optional<OAClass> label;
    bool open_license_present = false;    // libre contribution
    bool publisher_availability = false;  // gratis contribution (license-less
                                          // publisher-hosted copy)
    std::vector<std::string> evidence_refs;
    std::vector<std::string> diagnostics;
};

// Gold decision, in rule order: registry full-OA match; open publisher
// license within the immediate grace period (hybrid); delayed-journal-set
// membership, an open license past the grace period, or a PMC embargo
// (delayed); otherwise no gold label. A registry match outranks contradicting
// delay signals, which are logged as a diagnostic.
GoldOutcome classify_gold(const EvidenceBundle& bundle, const ClassifierConfig& config);

struct GreenOutcome {
    std::set<OAClass> labels;
    bool open_license_present = false;
    std::vector<std::string> evidence_refs;
};

// Green decision: every repository-hosted location whose URL is not on the
// unlawful-host denylist yields one label. Host comes from the repository
// registry (institutional / disciplinary / everything else -> other); timing
// from the deposit timestamp against the publication date (equal dates count
// as preprint), falling back on the declared version, else unknown.
GreenOutcome classify_green(const EvidenceBundle& bundle, const RepositoryRegistry& repositories,
                            const ClassifierConfig& config);

// Full decision: union of gold and green labels ({non_oa} when empty),
// primary = first label in precedence order, access mode libre > gratis >
// closed as justified by the evidence.
OAClassification classify(const EvidenceBundle& bundle, const RepositoryRegistry& repositories,
                          const ClassifierConfig& config);

// Evidence-level openness through the formal channel (open publisher license
// or a publisher-hosted copy); feeds the delayed-OA cohort detector, which
// needs openness signals for exactly the articles the classifier cannot
// label yet.
bool publisher_open_evidence(const EvidenceBundle& bundle, const ClassifierConfig& config);

} // namespace oaclass
