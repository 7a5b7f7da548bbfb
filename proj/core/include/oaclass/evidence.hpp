#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oaclass/dates.hpp"
#include "oaclass/record.hpp"
#include "oaclass/registries.hpp"

namespace oaclass {

enum class ContentVersion { VOR, AM, TDM, Unspecified };

std::string_view to_string(ContentVersion v) noexcept;
ContentVersion content_version_from_string(std::string_view s) noexcept;

// A license assertion attached to a work or an access location. delay_days
// (when provided upstream) is the time between the earliest publication date
// and the license start.
struct LicenseStatement {
    std::string url;
    std::optional<PartialDate> start_date;
    std::optional<int> delay_days;
    ContentVersion content_version = ContentVersion::Unspecified;

    bool operator==(const LicenseStatement&) const = default;
};

enum class LocationHostKind { PublisherSite, Repository };

std::string_view to_string(LocationHostKind k) noexcept;

enum class DeclaredVersion { SubmittedVersion, AcceptedVersion, PublishedVersion, Unknown };

std::string_view to_string(DeclaredVersion v) noexcept;
DeclaredVersion declared_version_from_string(std::string_view s) noexcept;

// One place where a copy of the work can be accessed.
struct AccessLocation {
    std::string url;
    LocationHostKind host_kind = LocationHostKind::Repository;
    std::optional<std::string> repo_hint; // never set for publisher sites
    std::optional<PartialDate> deposit_timestamp;
    DeclaredVersion declared_version = DeclaredVersion::Unknown;
    std::optional<LicenseStatement> license;

    bool operator==(const AccessLocation&) const = default;
};

// How the record was joined with its evidence.
enum class MatchMethod { Doi, Fallback, Unmatched };

std::string_view to_string(MatchMethod m) noexcept;

// Everything known about one record when it reaches the classifier.
struct EvidenceBundle {
    PublicationRecord record;
    std::vector<LicenseStatement> publisher_licenses;
    std::vector<AccessLocation> locations;
    std::optional<FullOAMatch> full_oa_match;
    std::vector<std::string> source_tags;
    MatchMethod match_method = MatchMethod::Unmatched;
    std::vector<std::string> diagnostics;

    bool operator==(const EvidenceBundle&) const = default;
};

// One-line JSON serialization (keys sorted, no embedded newlines) and its
// inverse. Byte-stable for identical bundles.
std::string to_json_line(const EvidenceBundle& bundle);
EvidenceBundle bundle_from_json_line(std::string_view line);

// A bare record line (the --records input format): the same shape as the
// bundle's "record" object.
PublicationRecord record_from_json_line(std::string_view line);

} // namespace oaclass
