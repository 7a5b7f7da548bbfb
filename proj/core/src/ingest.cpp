#include "oaclass/ingest.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "oaclass/csv.hpp"
#include "oaclass/errors.hpp"
#include "oaclass/text.hpp"

namespace oaclass {

using nlohmann::json;

namespace {

void for_each_json_line(const std::string& path, ParseReport& report,
                        const std::function<void(const json&, std::size_t)>& handle) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open snapshot: " + path);
    report.path = path;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim_view(line).empty())
            continue;
        ++report.lines_total;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            report.errors.push_back({line_no, std::string("invalid JSON: ") + e.what()});
            continue;
        }
        try {
            handle(j, line_no);
            ++report.yielded;
        } catch (const Error& e) {
            report.errors.push_back({line_no, e.what()});
        } catch (const json::exception& e) {
            report.errors.push_back({line_no, std::string("unexpected shape: ") + e.what()});
        }
    }
}

std::optional<PartialDate> date_from_parts_node(const json& node) {
    if (!node.is_object() || !node.contains("date-parts"))
        return std::nullopt;
    const auto& outer = node.at("date-parts");
    if (!outer.is_array() || outer.empty() || !outer[0].is_array() || outer[0].empty())
        return std::nullopt;
    std::vector<int> parts;
    for (const auto& p : outer[0]) {
        if (p.is_null())
            break;
        parts.push_back(p.get<int>());
    }
    if (parts.empty())
        return std::nullopt;
    return PartialDate::from_date_parts(parts);
}

LicenseStatement license_from_crossref(const json& node) {
    LicenseStatement license;
    license.url = node.at("URL").get<std::string>();
    if (node.contains("start"))
        license.start_date = date_from_parts_node(node.at("start"));
    if (node.contains("delay-in-days") && node.at("delay-in-days").is_number())
        license.delay_days = node.at("delay-in-days").get<int>();
    if (node.contains("content-version"))
        license.content_version =
            content_version_from_string(node.at("content-version").get<std::string>());
    return license;
}

// Unpaywall encodes licenses as short codes ("cc-by", "cc0"); Dublin Core and
// Crossref use URLs. Map codes onto the canonical creativecommons.org URLs so
// one pattern set matches all sources.
std::optional<LicenseStatement> license_from_location_value(const json& value) {
    if (value.is_null())
        return std::nullopt;
    const auto text = value.get<std::string>();
    if (text.empty())
        return std::nullopt;
    LicenseStatement license;
    if (text.starts_with("http://") || text.starts_with("https://")) {
        license.url = text;
    } else if (text == "cc0" || text == "public-domain") {
        license.url = "https://creativecommons.org/publicdomain/zero/1.0/";
    } else if (text.starts_with("cc-")) {
        license.url = "https://creativecommons.org/licenses/" + text.substr(3) + "/4.0/";
    } else {
        license.url = text;
    }
    return license;
}

} // namespace

void parse_crossref_snapshot(const std::string& path, ParseReport& report,
                             const std::function<void(CrossrefWork)>& sink) {
    for_each_json_line(path, report, [&](const json& j, std::size_t line_no) {
        CrossrefWork work{.doi = normalize_doi(j.at("DOI").get<std::string>())};

        for (const char* field : {"issued", "published-print", "published-online"})
            if (j.contains(field))
                if (const auto date = date_from_parts_node(j.at(field)))
                    work.dates.push_back(*date);

        if (j.contains("ISSN"))
            for (const auto& raw : j.at("ISSN")) {
                try {
                    work.issns.push_back(normalize_issn(raw.get<std::string>()));
                } catch (const Error& e) {
                    report.warnings.push_back({line_no, e.what()});
                }
            }

        if (j.contains("license"))
            for (const auto& node : j.at("license"))
                work.licenses.push_back(license_from_crossref(node));

        if (j.contains("title")) {
            const auto& t = j.at("title");
            work.title = t.is_array() ? (t.empty() ? "" : t[0].get<std::string>())
                                      : t.get<std::string>();
        }
        if (j.contains("container-title")) {
            const auto& t = j.at("container-title");
            work.container_title = t.is_array() ? (t.empty() ? "" : t[0].get<std::string>())
                                                : t.get<std::string>();
        }
        if (j.contains("type"))
            work.type = j.at("type").get<std::string>();
        if (j.contains("author"))
            for (const auto& a : j.at("author")) {
                std::string name = a.value("family", "");
                const std::string given = a.value("given", "");
                if (!given.empty())
                    name += (name.empty() ? "" : ", ") + given;
                if (!name.empty())
                    work.authors.push_back(std::move(name));
            }

        sink(std::move(work));
    });
}

std::vector<CrossrefWork> parse_crossref_snapshot(const std::string& path, ParseReport& report) {
    std::vector<CrossrefWork> works;
    parse_crossref_snapshot(path, report, [&](CrossrefWork w) { works.push_back(std::move(w)); });
    return works;
}

void parse_location_snapshot(const std::string& path, ParseReport& report,
                             const std::function<void(LocationRecord)>& sink) {
    for_each_json_line(path, report, [&](const json& j, std::size_t line_no) {
        LocationRecord record{.doi = normalize_doi(j.at("doi").get<std::string>())};

        if (j.contains("oa_locations"))
            for (const auto& node : j.at("oa_locations")) {
                AccessLocation location;
                location.url = node.value("url", "");
                if (location.url.empty()) {
                    report.warnings.push_back({line_no, "oa_location without url skipped"});
                    continue;
                }
                const std::string host_type = node.value("host_type", "");
                if (host_type == "publisher") {
                    location.host_kind = LocationHostKind::PublisherSite;
                } else if (host_type == "repository") {
                    location.host_kind = LocationHostKind::Repository;
                } else {
                    report.warnings.push_back(
                        {line_no, "unknown host_type '" + host_type + "', location skipped"});
                    continue;
                }
                if (location.host_kind == LocationHostKind::Repository) {
                    if (node.contains("repository_institution") &&
                        !node.at("repository_institution").is_null())
                        location.repo_hint = node.at("repository_institution").get<std::string>();
                    else if (node.contains("endpoint_id") && !node.at("endpoint_id").is_null())
                        location.repo_hint = node.at("endpoint_id").get<std::string>();
                }
                for (const char* field : {"updated", "date"})
                    if (!location.deposit_timestamp && node.contains(field) &&
                        node.at(field).is_string()) {
                        std::string_view text = node.at(field).get_ref<const std::string&>();
                        if (const auto t = text.find('T'); t != std::string_view::npos)
                            text = text.substr(0, t);
                        try {
                            location.deposit_timestamp = PartialDate::parse(text);
                        } catch (const FormatError&) {
                            report.warnings.push_back(
                                {line_no, "unparseable location date '" + std::string(text) + "'"});
                        }
                    }
                if (node.contains("version") && node.at("version").is_string())
                    location.declared_version =
                        declared_version_from_string(node.at("version").get<std::string>());
                if (node.contains("license"))
                    location.license = license_from_location_value(node.at("license"));
                record.locations.push_back(std::move(location));
            }

        sink(std::move(record));
    });
}

std::vector<LocationRecord> parse_location_snapshot(const std::string& path, ParseReport& report) {
    std::vector<LocationRecord> records;
    parse_location_snapshot(path, report,
                            [&](LocationRecord r) { records.push_back(std::move(r)); });
    return records;
}

std::vector<PublicationRecord> records_from_crossref(const std::vector<CrossrefWork>& works,
                                                     ParseReport& report) {
    std::vector<PublicationRecord> records;
    records.reserve(works.size());
    for (const auto& work : works) {
        DocumentType type;
        if (work.type == "journal-article" || work.type.empty()) {
            type = DocumentType::Article;
        } else if (work.type == "review" || work.type == "review-article") {
            type = DocumentType::Review;
        } else if (work.type == "proceedings-article") {
            type = DocumentType::ProceedingsPaper;
        } else {
            report.warnings.push_back(
                {0, "work " + work.doi.value() + " has out-of-scope type '" + work.type + "'"});
            continue;
        }
        PublicationRecord record;
        record.doi = work.doi;
        record.issns.insert(work.issns.begin(), work.issns.end());
        record.journal_title = work.container_title;
        record.publication_title = work.title;
        if (const auto earliest = earliest_date(work.dates)) {
            record.publication_date = *earliest;
        } else {
            report.warnings.push_back(
                {0, "work " + work.doi.value() + " has no publication date, skipped"});
            continue;
        }
        record.document_type = type;
        record.authors = work.authors;
        records.push_back(std::move(record));
    }
    return records;
}

// ---------------------------------------------------------------------------
// EvidenceIndex
// ---------------------------------------------------------------------------

std::string EvidenceIndex::fallback_key(const Issn& issn, const std::string& normalized_title,
                                        int year) {
    return issn.text() + "|" + normalized_title + "|" + std::to_string(year);
}

void EvidenceIndex::add_crossref(CrossrefWork work, const std::string& source_tag) {
    const std::size_t index = crossref_.size();
    crossref_.push_back({std::move(work), source_tag});
    const CrossrefWork& stored = crossref_.back().work;
    crossref_by_doi_.emplace(stored.doi.value(), index);
    if (!stored.title.empty() && !stored.dates.empty()) {
        const std::string title = normalize_title(stored.title);
        for (const auto& issn : stored.issns)
            for (const auto& date : stored.dates)
                crossref_by_key_.emplace(fallback_key(issn, title, date.year()), index);
    }
}

void EvidenceIndex::add_locations(LocationRecord record, const std::string& source_tag) {
    // A DOI with zero locations is still a valid observation; it simply
    // indexes nothing.
    for (auto& location : record.locations) {
        const std::size_t index = locations_.size();
        locations_.push_back({std::move(location), source_tag});
        locations_by_doi_.emplace(record.doi.value(), index);
    }
}

void EvidenceIndex::add_oai(OaiEvidence evidence, const std::string& source_tag) {
    const std::size_t index = locations_.size();
    locations_.push_back({std::move(evidence.location), source_tag});
    if (evidence.doi)
        locations_by_doi_.emplace(evidence.doi->value(), index);
    else if (evidence.title && evidence.date)
        locations_by_title_year_.emplace(
            normalize_title(*evidence.title) + "|" + std::to_string(evidence.date->year()), index);
}

std::vector<const EvidenceIndex::CrossrefSlot*> EvidenceIndex::crossref_by_doi(
    const Doi& doi) const {
    std::vector<const CrossrefSlot*> out;
    const auto [begin, end] = crossref_by_doi_.equal_range(doi.value());
    for (auto it = begin; it != end; ++it)
        out.push_back(&crossref_[it->second]);
    return out;
}

std::vector<const EvidenceIndex::CrossrefSlot*> EvidenceIndex::crossref_by_fallback(
    const Issn& issn, const std::string& normalized_title, int year) const {
    std::vector<const CrossrefSlot*> out;
    const auto [begin, end] = crossref_by_key_.equal_range(fallback_key(issn, normalized_title, year));
    for (auto it = begin; it != end; ++it)
        out.push_back(&crossref_[it->second]);
    return out;
}

std::vector<const EvidenceIndex::LocationSlot*> EvidenceIndex::locations_by_doi(
    const Doi& doi) const {
    std::vector<const LocationSlot*> out;
    const auto [begin, end] = locations_by_doi_.equal_range(doi.value());
    for (auto it = begin; it != end; ++it)
        out.push_back(&locations_[it->second]);
    return out;
}

std::vector<const EvidenceIndex::LocationSlot*> EvidenceIndex::locations_by_fallback(
    const std::string& normalized_title, int year) const {
    std::vector<const LocationSlot*> out;
    const auto [begin, end] =
        locations_by_title_year_.equal_range(normalized_title + "|" + std::to_string(year));
    for (auto it = begin; it != end; ++it)
        out.push_back(&locations_[it->second]);
    return out;
}

// ---------------------------------------------------------------------------
// assemble_bundles
// ---------------------------------------------------------------------------

AssembleResult assemble_bundles(const std::vector<PublicationRecord>& records,
                                const EvidenceIndex& index,
                                const JournalRegistry* journal_registry,
                                const IssnLinkTable& links) {
    AssembleResult result;
    result.bundles.reserve(records.size());

    auto add_tag = [](EvidenceBundle& bundle, const std::string& tag) {
        for (const auto& existing : bundle.source_tags)
            if (existing == tag)
                return;
        bundle.source_tags.push_back(tag);
    };

    for (const auto& record : records) {
        record.validate();
        EvidenceBundle bundle;
        bundle.record = record;

        std::vector<const EvidenceIndex::CrossrefSlot*> crossref_hits;
        std::vector<const EvidenceIndex::LocationSlot*> location_hits;

        if (record.doi) {
            crossref_hits = index.crossref_by_doi(*record.doi);
            location_hits = index.locations_by_doi(*record.doi);
            bundle.match_method =
                crossref_hits.empty() && location_hits.empty() ? MatchMethod::Unmatched
                                                               : MatchMethod::Doi;
        } else {
            const std::string title = normalize_title(record.publication_title);
            const int year = record.publication_date.year();
            for (const auto& issn : record.issns)
                for (const auto* slot : index.crossref_by_fallback(issn, title, year))
                    crossref_hits.push_back(slot);
            for (const auto* slot : index.locations_by_fallback(title, year))
                location_hits.push_back(slot);
            bundle.match_method =
                crossref_hits.empty() && location_hits.empty() ? MatchMethod::Unmatched
                                                               : MatchMethod::Fallback;
        }

        for (const auto* slot : crossref_hits) {
            if (slot->consumed)
                continue;
            slot->consumed = true;
            for (const auto& license : slot->work.licenses)
                bundle.publisher_licenses.push_back(license);
            add_tag(bundle, slot->source_tag);
        }
        for (const auto* slot : location_hits) {
            if (slot->consumed)
                continue;
            slot->consumed = true;
            bundle.locations.push_back(slot->location);
            add_tag(bundle, slot->source_tag);
        }

        if (journal_registry)
            bundle.full_oa_match = journal_registry->lookup(
                record.issns, record.publication_date.year(), links);

        // delay-in-days should agree with the license start when both dates
        // are exact; disagreement is an evidence-quality diagnostic, not an error.
        for (const auto& license : bundle.publisher_licenses) {
            if (license.delay_days && license.start_date &&
                license.start_date->precision() == DatePrecision::Day &&
                record.publication_date.precision() == DatePrecision::Day) {
                const auto diff =
                    days_between_conservative(record.publication_date, *license.start_date);
                const auto delta = diff - *license.delay_days;
                if (delta > 1 || delta < -1)
                    bundle.diagnostics.push_back(
                        "license delay_days=" + std::to_string(*license.delay_days) +
                        " disagrees with start-publication gap of " + std::to_string(diff) +
                        " days (" + license.url + ")");
            }
        }

        result.bundles.push_back(std::move(bundle));
    }

    for (const auto& slot : index.crossref_slots())
        if (!slot.consumed)
            result.orphans.push_back(
                {slot.work.doi.value(), slot.source_tag, "no matching record"});
    for (const auto& slot : index.location_slots())
        if (!slot.consumed)
            result.orphans.push_back({slot.location.url, slot.source_tag, "no matching record"});

    return result;
}

void write_orphan_csv(std::ostream& out, const std::vector<OrphanRow>& orphans) {
    write_csv_record(out, {"evidence_key", "source_tag", "reason"});
    for (const auto& row : orphans)
        write_csv_record(out, {row.evidence_key, row.source_tag, row.reason});
}

} // namespace oaclass
