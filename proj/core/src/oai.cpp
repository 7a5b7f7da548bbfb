#include "oaclass/oai.hpp"

#include <algorithm>

#include <json.hpp>

#include "oaclass/errors.hpp"
#include "oaclass/text.hpp"
#include "oaclass/xml.hpp"

namespace oaclass {

using nlohmann::json;

namespace {

std::vector<std::string> collect_dc(const XmlElement& dc, std::string_view local) {
    std::vector<std::string> out;
    for (const auto* el : dc.children_named(local)) {
        const auto value = trim_view(el->text);
        if (!value.empty())
            out.emplace_back(value);
    }
    return out;
}

} // namespace

OaiPage parse_oai_dc(std::string_view xml) {
    const XmlElement root = parse_xml(xml);
    OaiPage page;

    if (const auto* error = root.child("error")) {
        page.error_code = std::string(error->attribute("code"));
        page.error_message = std::string(trim_view(error->text));
        return page;
    }

    const XmlElement* list = root.child("ListRecords");
    if (!list)
        list = root.find("ListRecords");
    if (!list)
        throw XmlError("response has no ListRecords element");

    for (const auto* record_el : list->children_named("record")) {
        const XmlElement* header = record_el->child("header");
        if (!header) {
            page.record_errors.push_back("record without header");
            continue;
        }
        OaiRecord record;
        record.deleted = header->attribute("status") == "deleted";
        if (const auto* id = header->child("identifier"))
            record.identifier = std::string(trim_view(id->text));
        if (record.identifier.empty()) {
            page.record_errors.push_back("record without mandatory header identifier");
            continue;
        }
        if (const auto* datestamp = header->child("datestamp"))
            record.datestamp = std::string(trim_view(datestamp->text));

        if (!record.deleted) {
            if (const auto* metadata = record_el->child("metadata")) {
                if (const auto* dc = metadata->find("dc")) {
                    record.titles = collect_dc(*dc, "title");
                    record.creators = collect_dc(*dc, "creator");
                    record.identifiers = collect_dc(*dc, "identifier");
                    record.dates = collect_dc(*dc, "date");
                    record.rights = collect_dc(*dc, "rights");
                    record.types = collect_dc(*dc, "type");
                }
            }
        }
        page.records.push_back(std::move(record));
    }

    if (const auto* token = list->child("resumptionToken"))
        page.resumption_token = std::string(trim_view(token->text));
    return page;
}

std::string to_json_line(const OaiRecord& record) {
    json j;
    j["identifier"] = record.identifier;
    j["datestamp"] = record.datestamp;
    j["deleted"] = record.deleted;
    json dc;
    dc["title"] = record.titles;
    dc["creator"] = record.creators;
    dc["identifier"] = record.identifiers;
    dc["date"] = record.dates;
    dc["rights"] = record.rights;
    dc["type"] = record.types;
    j["dc"] = std::move(dc);
    return j.dump();
}

OaiRecord oai_record_from_json_line(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
        OaiRecord record;
        record.identifier = j.at("identifier").get<std::string>();
        record.datestamp = j.value("datestamp", "");
        record.deleted = j.value("deleted", false);
        if (j.contains("dc")) {
            const auto& dc = j.at("dc");
            auto get = [&dc](const char* key) {
                return dc.contains(key) ? dc.at(key).get<std::vector<std::string>>()
                                        : std::vector<std::string>{};
            };
            record.titles = get("title");
            record.creators = get("creator");
            record.identifiers = get("identifier");
            record.dates = get("date");
            record.rights = get("rights");
            record.types = get("type");
        }
        return record;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid OAI record JSON: ") + e.what());
    }
}

std::optional<OaiEvidence> oai_to_evidence(const OaiRecord& record) {
    if (record.deleted)
        return std::nullopt;

    OaiEvidence evidence;
    std::string location_url;
    for (const auto& id : record.identifiers) {
        // DOI forms (resolver URLs, "doi:", bare "10.x/y") identify the work;
        // only non-DOI http(s) identifiers qualify as access locations.
        try {
            const Doi doi = normalize_doi(id);
            if (!evidence.doi)
                evidence.doi = doi;
            continue;
        } catch (const FormatError&) {
        }
        if (location_url.empty() &&
            (id.starts_with("http://") || id.starts_with("https://")))
            location_url = id;
    }
    if (location_url.empty())
        return std::nullopt;

    evidence.location.url = location_url;
    evidence.location.host_kind = LocationHostKind::Repository;
    evidence.location.declared_version = DeclaredVersion::Unknown;

    std::vector<PartialDate> dates;
    for (const auto& raw : record.dates) {
        // Accept ISO timestamps by keeping the date part only.
        std::string_view text = trim_view(raw);
        if (const auto t = text.find('T'); t != std::string_view::npos)
            text = text.substr(0, t);
        try {
            dates.push_back(PartialDate::parse(text));
        } catch (const FormatError&) {
        }
    }
    if (!dates.empty())
        evidence.location.deposit_timestamp = earliest_date(dates);

    for (const auto& rights : record.rights) {
        const auto value = trim_view(rights);
        if (value.starts_with("http://") || value.starts_with("https://")) {
            evidence.location.license = LicenseStatement{std::string(value), std::nullopt,
                                                         std::nullopt, ContentVersion::Unspecified};
            break;
        }
    }

    if (!record.titles.empty())
        evidence.title = record.titles.front();
    if (!dates.empty())
        evidence.date = evidence.location.deposit_timestamp;
    return evidence;
}

} // namespace oaclass
