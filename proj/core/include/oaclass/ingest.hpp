#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oaclass/evidence.hpp"
#include "oaclass/oai.hpp"
#include "oaclass/record.hpp"
#include "oaclass/registries.hpp"

namespace oaclass {

// One work as found in a Crossref-style snapshot line.
struct CrossrefWork {
    Doi doi;
    std::vector<PartialDate> dates; // issued, published-print, published-online
    std::vector<Issn> issns;
    std::vector<LicenseStatement> licenses;
    std::string title;
    std::string container_title;
    std::string type;
    std::vector<std::string> authors;
};

// One Unpaywall-style snapshot line: a DOI and its access locations. An empty
// location list is a valid observation (the record may simply be closed).
struct LocationRecord {
    Doi doi;
    std::vector<AccessLocation> locations;
};

struct ParseIssue {
    std::size_t line = 0;
    std::string message;
};

// Loss accounting for one snapshot file:
//   lines_total (non-empty) == yielded + errors.size().
struct ParseReport {
    std::string path;
    std::size_t lines_total = 0;
    std::size_t yielded = 0;
    std::vector<ParseIssue> errors;   // line skipped
    std::vector<ParseIssue> warnings; // line kept, item-level oddity
};

// Newline-delimited JSON parsers. Bad lines are recorded in the report and
// skipped; processing always continues.
void parse_crossref_snapshot(const std::string& path, ParseReport& report,
                             const std::function<void(CrossrefWork)>& sink);
std::vector<CrossrefWork> parse_crossref_snapshot(const std::string& path, ParseReport& report);

void parse_location_snapshot(const std::string& path, ParseReport& report,
                             const std::function<void(LocationRecord)>& sink);
std::vector<LocationRecord> parse_location_snapshot(const std::string& path, ParseReport& report);

// Derives classifiable records from Crossref works (for corpora that have no
// separate record stream): document type mapped from the Crossref type
// string, publication date = earliest available date. Works with types
// outside {journal-article, review(-article), proceedings-article} are
// skipped with a warning.
std::vector<PublicationRecord> records_from_crossref(const std::vector<CrossrefWork>& works,
                                                     ParseReport& report);

// Evidence keyed for joining: built once (single writer), then queried
// read-only by assemble_bundles.
class EvidenceIndex {
public:
    void add_crossref(CrossrefWork work, const std::string& source_tag);
    void add_locations(LocationRecord locations, const std::string& source_tag);
    void add_oai(OaiEvidence evidence, const std::string& source_tag);

    struct CrossrefSlot {
        CrossrefWork work;
        std::string source_tag;
        mutable bool consumed = false;
    };
    struct LocationSlot {
        AccessLocation location;
        std::string source_tag;
        mutable bool consumed = false;
    };

    const std::vector<CrossrefSlot>& crossref_slots() const noexcept { return crossref_; }
    const std::vector<LocationSlot>& location_slots() const noexcept { return locations_; }

    std::vector<const CrossrefSlot*> crossref_by_doi(const Doi& doi) const;
    std::vector<const CrossrefSlot*> crossref_by_fallback(const Issn& issn,
                                                          const std::string& normalized_title,
                                                          int year) const;
    std::vector<const LocationSlot*> locations_by_doi(const Doi& doi) const;
    std::vector<const LocationSlot*> locations_by_fallback(const std::string& normalized_title,
                                                           int year) const;

private:
    static std::string fallback_key(const Issn& issn, const std::string& normalized_title,
                                    int year);

    std::vector<CrossrefSlot> crossref_;
    std::vector<LocationSlot> locations_;
    std::multimap<std::string, std::size_t> crossref_by_doi_;
    std::multimap<std::string, std::size_t> crossref_by_key_;
    std::multimap<std::string, std::size_t> locations_by_doi_;
    std::multimap<std::string, std::size_t> locations_by_title_year_;
};

// Evidence that matched no record.
struct OrphanRow {
    std::string evidence_key;
    std::string source_tag;
    std::string reason;
};

struct AssembleResult {
    std::vector<EvidenceBundle> bundles; // exactly one per input record, same order
    std::vector<OrphanRow> orphans;
};

// Joins records with indexed evidence: primarily on normalized DOI, for
// DOI-less records on (ISSN, normalized title, publication year). Populates
// full_oa_match through the journal registry when one is given. Non-matches
// are data, not errors; leftover evidence lands in the orphan report.
AssembleResult assemble_bundles(const std::vector<PublicationRecord>& records,
                                const EvidenceIndex& index,
                                const JournalRegistry* journal_registry,
                                const IssnLinkTable& links);

void write_orphan_csv(std::ostream& out, const std::vector<OrphanRow>& orphans);

} // namespace oaclass
