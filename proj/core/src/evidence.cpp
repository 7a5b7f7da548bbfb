#include "oaclass/evidence.hpp"

#include <json.hpp>

#include "oaclass/errors.hpp"

namespace oaclass {

using nlohmann::json;

std::string_view to_string(ContentVersion v) noexcept {
    switch (v) {
    case ContentVersion::VOR:
        return "vor";
    case ContentVersion::AM:
        return "am";
    case ContentVersion::TDM:
        return "tdm";
    case ContentVersion::Unspecified:
        return "unspecified";
    }
    return "unspecified";
}

ContentVersion content_version_from_string(std::string_view s) noexcept {
    if (s == "vor")
        return ContentVersion::VOR;
    if (s == "am")
        return ContentVersion::AM;
    if (s == "tdm")
        return ContentVersion::TDM;
    return ContentVersion::Unspecified;
}

std::string_view to_string(LocationHostKind k) noexcept {
    return k == LocationHostKind::PublisherSite ? "publisher_site" : "repository";
}

std::string_view to_string(DeclaredVersion v) noexcept {
    switch (v) {
    case DeclaredVersion::SubmittedVersion:
        return "submitted";
    case DeclaredVersion::AcceptedVersion:
        return "accepted";
    case DeclaredVersion::PublishedVersion:
        return "published";
    case DeclaredVersion::Unknown:
        return "unknown";
    }
    return "unknown";
}

DeclaredVersion declared_version_from_string(std::string_view s) noexcept {
    if (s == "submitted" || s == "submittedVersion")
        return DeclaredVersion::SubmittedVersion;
    if (s == "accepted" || s == "acceptedVersion")
        return DeclaredVersion::AcceptedVersion;
    if (s == "published" || s == "publishedVersion")
        return DeclaredVersion::PublishedVersion;
    return DeclaredVersion::Unknown;
}

std::string_view to_string(MatchMethod m) noexcept {
    switch (m) {
    case MatchMethod::Doi:
        return "doi";
    case MatchMethod::Fallback:
        return "fallback";
    case MatchMethod::Unmatched:
        return "unmatched";
    }
    return "unmatched";
}

namespace {

json license_to_json(const LicenseStatement& license) {
    json j;
    j["url"] = license.url;
    if (license.start_date)
        j["start"] = license.start_date->to_string();
    if (license.delay_days)
        j["delay_days"] = *license.delay_days;
    j["content_version"] = to_string(license.content_version);
    return j;
}

LicenseStatement license_from_json(const json& j) {
    LicenseStatement license;
    license.url = j.at("url").get<std::string>();
    if (j.contains("start"))
        license.start_date = PartialDate::parse(j.at("start").get<std::string>());
    if (j.contains("delay_days"))
        license.delay_days = j.at("delay_days").get<int>();
    if (j.contains("content_version"))
        license.content_version =
            content_version_from_string(j.at("content_version").get<std::string>());
    return license;
}

json location_to_json(const AccessLocation& location) {
    json j;
    j["url"] = location.url;
    j["host_kind"] = to_string(location.host_kind);
    if (location.repo_hint)
        j["repo_hint"] = *location.repo_hint;
    if (location.deposit_timestamp)
        j["deposit_timestamp"] = location.deposit_timestamp->to_string();
    j["declared_version"] = to_string(location.declared_version);
    if (location.license)
        j["license"] = license_to_json(*location.license);
    return j;
}

AccessLocation location_from_json(const json& j) {
    AccessLocation location;
    location.url = j.at("url").get<std::string>();
    location.host_kind = j.at("host_kind").get<std::string>() == "publisher_site"
                             ? LocationHostKind::PublisherSite
                             : LocationHostKind::Repository;
    if (j.contains("repo_hint"))
        location.repo_hint = j.at("repo_hint").get<std::string>();
    if (j.contains("deposit_timestamp"))
        location.deposit_timestamp =
            PartialDate::parse(j.at("deposit_timestamp").get<std::string>());
    if (j.contains("declared_version"))
        location.declared_version =
            declared_version_from_string(j.at("declared_version").get<std::string>());
    if (j.contains("license"))
        location.license = license_from_json(j.at("license"));
    return location;
}

json record_to_json(const PublicationRecord& record) {
    json j;
    if (record.doi)
        j["doi"] = record.doi->value();
    json issns = json::array();
    for (const auto& issn : record.issns)
        issns.push_back(issn.text());
    j["issns"] = std::move(issns);
    if (!record.journal_title.empty())
        j["journal_title"] = record.journal_title;
    if (!record.publication_title.empty())
        j["publication_title"] = record.publication_title;
    j["publication_date"] = record.publication_date.to_string();
    j["document_type"] = to_string(record.document_type);
    if (!record.authors.empty())
        j["authors"] = record.authors;
    return j;
}

PublicationRecord record_from_json(const json& j) {
    PublicationRecord record;
    if (j.contains("doi"))
        record.doi = normalize_doi(j.at("doi").get<std::string>());
    if (j.contains("issns"))
        for (const auto& issn : j.at("issns"))
            record.issns.insert(normalize_issn(issn.get<std::string>()));
    if (j.contains("journal_title"))
        record.journal_title = j.at("journal_title").get<std::string>();
    if (j.contains("publication_title"))
        record.publication_title = j.at("publication_title").get<std::string>();
    record.publication_date = PartialDate::parse(j.at("publication_date").get<std::string>());
    if (j.contains("document_type")) {
        const auto type = document_type_from_string(j.at("document_type").get<std::string>());
        if (!type)
            throw FormatError("unknown document_type: " +
                              j.at("document_type").get<std::string>());
        record.document_type = *type;
    }
    if (j.contains("authors"))
        record.authors = j.at("authors").get<std::vector<std::string>>();
    record.validate();
    return record;
}

json match_to_json(const FullOAMatch& match) {
    json j;
    json issns = json::array();
    for (const auto& issn : match.entry.issns)
        issns.push_back(issn.text());
    j["issns"] = std::move(issns);
    if (match.entry.issn_l)
        j["issn_l"] = match.entry.issn_l->text();
    j["title"] = match.entry.title;
    if (match.entry.oa_since_year)
        j["oa_since_year"] = *match.entry.oa_since_year;
    j["source"] = to_string(match.entry.source);
    if (match.entry.pmc_embargo_months)
        j["pmc_embargo_months"] = *match.entry.pmc_embargo_months;
    j["matched_via"] = match.matched_via == MatchVia::Direct ? "direct" : "issn_l";
    return j;
}

FullOAMatch match_from_json(const json& j) {
    FullOAMatch match;
    for (const auto& issn : j.at("issns"))
        match.entry.issns.insert(normalize_issn(issn.get<std::string>()));
    if (j.contains("issn_l"))
        match.entry.issn_l = normalize_issn(j.at("issn_l").get<std::string>());
    match.entry.title = j.at("title").get<std::string>();
    if (j.contains("oa_since_year"))
        match.entry.oa_since_year = j.at("oa_since_year").get<int>();
    const auto source = registry_source_from_string(j.at("source").get<std::string>());
    if (!source)
        throw FormatError("unknown registry source: " + j.at("source").get<std::string>());
    match.entry.source = *source;
    if (j.contains("pmc_embargo_months"))
        match.entry.pmc_embargo_months = j.at("pmc_embargo_months").get<int>();
    match.matched_via =
        j.at("matched_via").get<std::string>() == "direct" ? MatchVia::Direct : MatchVia::IssnL;
    return match;
}

} // namespace

std::string to_json_line(const EvidenceBundle& bundle) {
    json j;
    j["record"] = record_to_json(bundle.record);
    json licenses = json::array();
    for (const auto& license : bundle.publisher_licenses)
        licenses.push_back(license_to_json(license));
    j["publisher_licenses"] = std::move(licenses);
    json locations = json::array();
    for (const auto& location : bundle.locations)
        locations.push_back(location_to_json(location));
    j["locations"] = std::move(locations);
    if (bundle.full_oa_match)
        j["full_oa_match"] = match_to_json(*bundle.full_oa_match);
    j["source_tags"] = bundle.source_tags;
    j["match_method"] = to_string(bundle.match_method);
    if (!bundle.diagnostics.empty())
        j["diagnostics"] = bundle.diagnostics;
    return j.dump();
}

PublicationRecord record_from_json_line(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid record JSON: ") + e.what());
    }
    try {
        return record_from_json(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("record JSON missing required field: ") + e.what());
    }
}

EvidenceBundle bundle_from_json_line(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid bundle JSON: ") + e.what());
    }
    try {
        EvidenceBundle bundle;
        bundle.record = record_from_json(j.at("record"));
        if (j.contains("publisher_licenses"))
            for (const auto& license : j.at("publisher_licenses"))
                bundle.publisher_licenses.push_back(license_from_json(license));
        if (j.contains("locations"))
            for (const auto& location : j.at("locations"))
                bundle.locations.push_back(location_from_json(location));
        if (j.contains("full_oa_match"))
            bundle.full_oa_match = match_from_json(j.at("full_oa_match"));
        if (j.contains("source_tags"))
            bundle.source_tags = j.at("source_tags").get<std::vector<std::string>>();
        if (j.contains("match_method")) {
            const auto method = j.at("match_method").get<std::string>();
            bundle.match_method = method == "doi"        ? MatchMethod::Doi
                                  : method == "fallback" ? MatchMethod::Fallback
                                                         : MatchMethod::Unmatched;
        }
        if (j.contains("diagnostics"))
            bundle.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
        return bundle;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bundle JSON missing required field: ") + e.what());
    }
}

} // namespace oaclass
