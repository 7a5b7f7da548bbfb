#include "oaclass/report.hpp"

#include <algorithm>
#include <ostream>

#include <json.hpp>

#include "oaclass/csv.hpp"
#include "oaclass/errors.hpp"

namespace oaclass {

using nlohmann::json;

std::string to_json_line(const ClassificationRow& row) {
    json j;
    if (row.doi)
        j["doi"] = *row.doi;
    if (row.journal)
        j["journal"] = *row.journal;
    if (row.journal_title)
        j["journal_title"] = *row.journal_title;
    if (row.publication_date)
        j["publication_date"] = row.publication_date->to_string();
    if (row.document_type)
        j["document_type"] = to_string(*row.document_type);

    json labels = json::array();
    for (const auto& label : row.classification.labels())
        labels.push_back(std::string(label.code()));
    j["labels"] = std::move(labels);
    j["primary"] = std::string(row.classification.primary().code());
    j["access_mode"] = std::string(to_string(row.classification.access_mode()));
    j["evidence_refs"] = row.classification.evidence_refs();
    if (!row.classification.diagnostics().empty())
        j["diagnostics"] = row.classification.diagnostics();
    j["publisher_open_evidence"] = row.publisher_open_evidence;
    return j.dump();
}

ClassificationRow classification_row_from_json_line(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid classification JSON: ") + e.what());
    }
    try {
        ClassificationRow row;
        if (j.contains("doi"))
            row.doi = j.at("doi").get<std::string>();
        if (j.contains("journal"))
            row.journal = j.at("journal").get<std::string>();
        if (j.contains("journal_title"))
            row.journal_title = j.at("journal_title").get<std::string>();
        if (j.contains("publication_date"))
            row.publication_date = PartialDate::parse(j.at("publication_date").get<std::string>());
        if (j.contains("document_type")) {
            const auto type = document_type_from_string(j.at("document_type").get<std::string>());
            if (!type)
                throw ParseError("unknown document_type in classification row");
            row.document_type = *type;
        }

        std::set<OAClass> labels;
        for (const auto& code : j.at("labels")) {
            const auto cls = OAClass::from_code(code.get<std::string>());
            if (!cls)
                throw ParseError("unknown class code '" + code.get<std::string>() + "'");
            labels.insert(*cls);
        }
        const auto primary = OAClass::from_code(j.at("primary").get<std::string>());
        if (!primary)
            throw ParseError("unknown primary code");
        const auto mode = access_mode_from_string(j.at("access_mode").get<std::string>());
        if (!mode)
            throw ParseError("unknown access_mode");
        std::vector<std::string> refs;
        if (j.contains("evidence_refs"))
            refs = j.at("evidence_refs").get<std::vector<std::string>>();
        std::vector<std::string> diagnostics;
        if (j.contains("diagnostics"))
            diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
        row.classification = OAClassification::create(std::move(labels), *primary, *mode,
                                                      std::move(refs), std::move(diagnostics));
        row.publisher_open_evidence = j.value("publisher_open_evidence", false);
        return row;
    } catch (const json::exception& e) {
        throw ParseError(std::string("classification row missing field: ") + e.what());
    }
}

namespace {

std::string group_value(const ClassificationRow& row, const std::string& dimension) {
    if (dimension == "year")
        return row.publication_date ? std::to_string(row.publication_date->year()) : "unknown";
    if (dimension == "journal")
        return row.journal.value_or("unknown");
    if (dimension == "document_type")
        return row.document_type ? std::string(to_string(*row.document_type)) : "unknown";
    if (dimension == "access_mode")
        return std::string(to_string(row.classification.access_mode()));
    throw UnknownFieldError("unknown group-by field '" + dimension +
                            "' (expected year, journal, document_type or access_mode)");
}

} // namespace

std::vector<ShareReport> aggregate(const std::vector<ClassificationRow>& rows,
                                   const std::vector<std::string>& group_by,
                                   AggregationMode mode) {
    // Validate dimensions up front so an empty input still rejects bad names.
    for (const auto& dimension : group_by) {
        ClassificationRow probe;
        group_value(probe, dimension);
    }

    std::map<std::vector<std::string>, ShareReport> groups;
    for (const auto& row : rows) {
        std::vector<std::string> key;
        key.reserve(group_by.size());
        for (const auto& dimension : group_by)
            key.push_back(group_value(row, dimension));

        auto [it, inserted] = groups.try_emplace(key);
        ShareReport& report = it->second;
        if (inserted) {
            for (std::size_t i = 0; i < group_by.size(); ++i)
                report.group_key.emplace_back(group_by[i], key[i]);
            for (const auto& cls : all_oa_classes()) {
                report.counts[std::string(cls.code())] = 0;
                report.shares[std::string(cls.code())] = 0.0;
            }
        }

        ++report.total;
        if (mode == AggregationMode::PrimaryLabel) {
            ++report.counts[std::string(row.classification.primary().code())];
        } else {
            for (const auto& label : row.classification.labels())
                ++report.counts[std::string(label.code())];
        }
    }

    std::vector<ShareReport> reports;
    reports.reserve(groups.size());
    for (auto& [key, report] : groups) {
        for (auto& [code, share] : report.shares)
            share = report.total ? static_cast<double>(report.counts[code]) / report.total : 0.0;
        reports.push_back(std::move(report));
    }
    return reports;
}

std::string format_share(double share) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", share);
    return buf;
}

void emit_csv(std::ostream& out, const std::vector<ShareReport>& reports,
              const std::vector<std::string>& group_by) {
    std::vector<std::string> header = group_by;
    header.insert(header.end(), {"class", "count", "share"});
    write_csv_record(out, header);

    for (const auto& report : reports)
        for (const auto& cls : all_oa_classes()) {
            const std::string code(cls.code());
            std::vector<std::string> fields;
            fields.reserve(group_by.size() + 3);
            for (const auto& [dimension, value] : report.group_key)
                fields.push_back(value);
            fields.push_back(code);
            fields.push_back(std::to_string(report.counts.at(code)));
            fields.push_back(format_share(report.shares.at(code)));
            write_csv_record(out, fields);
        }
}

void emit_json(std::ostream& out, const std::vector<ShareReport>& reports) {
    json array = json::array();
    for (const auto& report : reports) {
        json j;
        json group = json::array();
        for (const auto& [dimension, value] : report.group_key)
            group.push_back(json::array({dimension, value}));
        j["group"] = std::move(group);
        j["total"] = report.total;
        j["counts"] = report.counts;
        j["shares"] = report.shares;
        array.push_back(std::move(j));
    }
    out << array.dump(2) << "\n";
}

} // namespace oaclass
