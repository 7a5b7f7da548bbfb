#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oaclass/classification.hpp"
#include "oaclass/dates.hpp"
#include "oaclass/record.hpp"

namespace oaclass {

// One classified record as written to classification NDJSON: the
// classification plus the record context needed for grouping and for the
// delayed-OA detector.
struct ClassificationRow {
    std::optional<std::string> doi;
    std::optional<std::string> journal;        // ISSN-L (or first ISSN) when known
    std::optional<std::string> journal_title;
    std::optional<PartialDate> publication_date;
    std::optional<DocumentType> document_type;
    OAClassification classification = OAClassification::create(
        {OAClass::non_oa()}, OAClass::non_oa(), AccessMode::Closed, {});
    bool publisher_open_evidence = false;

    bool operator==(const ClassificationRow&) const = default;
};

std::string to_json_line(const ClassificationRow& row);
ClassificationRow classification_row_from_json_line(std::string_view line);

enum class AggregationMode { PrimaryLabel, MultiLabel };

// Class shares for one group: every OAClass code is present (zero allowed),
// counts sum to total in primary mode, shares are count/total.
struct ShareReport {
    std::vector<std::pair<std::string, std::string>> group_key; // (dimension, value) in group_by order
    std::map<std::string, std::size_t> counts;                  // class code -> count
    std::size_t total = 0;
    std::map<std::string, double> shares;

    bool operator==(const ShareReport&) const = default;
};

// Grouping dimensions: "year", "journal", "document_type", "access_mode".
// Unknown names raise UnknownFieldError; rows without a value group under
// "unknown". Groups come back sorted by key. PrimaryLabel mode partitions by
// the primary label (shares sum to 1); MultiLabel counts every label (class
// counts stay <= total, shares may sum past 1).
std::vector<ShareReport> aggregate(const std::vector<ClassificationRow>& rows,
                                   const std::vector<std::string>& group_by,
                                   AggregationMode mode);

// CSV: group columns, then class,count,share with the canonical class order
// and shares rendered to 6 decimals. Byte-stable on identical input.
void emit_csv(std::ostream& out, const std::vector<ShareReport>& reports,
              const std::vector<std::string>& group_by);

// JSON: the ShareReport structure verbatim (array of objects).
void emit_json(std::ostream& out, const std::vector<ShareReport>& reports);

std::string format_share(double share);

} // namespace oaclass
