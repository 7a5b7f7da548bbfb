#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oaclass/dates.hpp"
#include "oaclass/doi.hpp"
#include "oaclass/evidence.hpp"

namespace oaclass {

// One harvested record in oai_dc representation. Deleted records keep their
// header but carry no Dublin Core payload.
struct OaiRecord {
    std::string identifier;
    std::string datestamp;
    bool deleted = false;
    std::vector<std::string> titles;
    std::vector<std::string> creators;
    std::vector<std::string> identifiers;
    std::vector<std::string> dates;
    std::vector<std::string> rights;
    std::vector<std::string> types;

    bool operator==(const OaiRecord&) const = default;
};

// Parsed ListRecords response body.
struct OaiPage {
    std::vector<OaiRecord> records;
    std::string resumption_token;       // empty = no further page
    std::string error_code;             // OAI-PMH <error code=...>, empty = none
    std::string error_message;
    std::vector<std::string> record_errors; // per-record problems (record skipped)
};

// Parses an OAI-PMH 2.0 ListRecords response with metadataPrefix=oai_dc.
// Malformed XML raises XmlError; a record missing its mandatory header
// identifier is reported in record_errors and skipped, the rest of the page
// still parses.
OaiPage parse_oai_dc(std::string_view xml);

// Serializes one record as a single JSON line (the harvest NDJSON sidecar
// format) and back.
std::string to_json_line(const OaiRecord& record);
OaiRecord oai_record_from_json_line(std::string_view line);

// Evidence extracted from one OAI record: the DOI it claims (if any), an
// access location on the hosting repository, and optional fallback join keys.
struct OaiEvidence {
    std::optional<Doi> doi;
    AccessLocation location;
    std::optional<std::string> title;  // first dc:title, for fallback joining
    std::optional<PartialDate> date;   // earliest parseable dc:date
};

// Maps a non-deleted record onto evidence: the location URL is the first
// http(s) dc:identifier that is not a DOI resolver link (fallback: the OAI
// identifier host), the deposit timestamp is the earliest parseable dc:date,
// and a dc:rights URL becomes the location license. Returns nullopt for
// deleted records or records without any usable location.
std::optional<OaiEvidence> oai_to_evidence(const OaiRecord& record);

} // namespace oaclass
