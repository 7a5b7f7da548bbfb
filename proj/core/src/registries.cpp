#include "oaclass/registries.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "oaclass/csv.hpp"
#include "oaclass/errors.hpp"
#include "oaclass/text.hpp"
#include "oaclass/url.hpp"

namespace oaclass {

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open file: " + path);
    return in;
}

void report(std::vector<RegistryDiagnostic>* diagnostics, std::size_t line, std::string kind,
            const std::string& message) {
    if (!diagnostics) {
        if (kind == "checksum")
            throw ChecksumError(message + " (line " + std::to_string(line) + ")");
        if (kind == "conflict")
            throw ConflictError(message + " (line " + std::to_string(line) + ")");
        if (kind == "unknown_kind")
            throw UnknownKindError(message + " (line " + std::to_string(line) + ")");
        throw ParseError(message, line);
    }
    diagnostics->push_back({line, std::move(kind), message});
}

bool is_blank_row(const std::vector<std::string>& row) {
    return row.size() == 1 && row[0].empty();
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto sep = text.find(';', start);
        const auto end = sep == std::string_view::npos ? text.size() : sep;
        const auto piece = trim_view(text.substr(start, end - start));
        if (!piece.empty())
            parts.emplace_back(piece);
        if (sep == std::string_view::npos)
            break;
        start = sep + 1;
    }
    return parts;
}

int parse_year(const std::string& text, std::size_t line) {
    try {
        const int year = std::stoi(text);
        if (year < 1800 || year > 2100)
            throw ParseError("implausible year " + text, line);
        return year;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("invalid year '" + text + "'", line);
    }
}

} // namespace

std::string_view to_string(RegistrySource s) noexcept {
    switch (s) {
    case RegistrySource::DoajLike:
        return "doaj";
    case RegistrySource::GoldListLike:
        return "gold_list";
    case RegistrySource::PmcLike:
        return "pmc";
    }
    return "doaj";
}

std::optional<RegistrySource> registry_source_from_string(std::string_view s) noexcept {
    if (s == "doaj")
        return RegistrySource::DoajLike;
    if (s == "gold_list")
        return RegistrySource::GoldListLike;
    if (s == "pmc")
        return RegistrySource::PmcLike;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// IssnLinkTable
// ---------------------------------------------------------------------------

IssnLinkTable IssnLinkTable::load(const std::string& path) {
    auto in = open_or_throw(path);
    CsvReader reader(in);

    auto header = reader.next();
    if (!header || header->size() < 2 || (*header)[0] != "issn" || (*header)[1] != "issn_l")
        throw ParseError("expected header 'issn,issn_l' in " + path, 1);

    IssnLinkTable table;
    while (auto row = reader.next()) {
        if (is_blank_row(*row))
            continue;
        if (row->size() < 2)
            throw ParseError("link table row needs 2 fields", reader.line());
        table.add(normalize_issn((*row)[0]), normalize_issn((*row)[1]));
    }
    return table;
}

void IssnLinkTable::add(const Issn& issn, const Issn& issn_l) {
    // The ISSN-L must map to itself; install that mapping first.
    if (auto it = mapping_.find(issn_l); it != mapping_.end()) {
        if (it->second != issn_l)
            throw ConflictError("ISSN-L " + issn_l.text() + " is itself linked to " +
                                it->second.text());
    } else {
        mapping_.emplace(issn_l, issn_l);
    }
    if (auto it = mapping_.find(issn); it != mapping_.end()) {
        if (it->second != issn_l)
            throw ConflictError("ISSN " + issn.text() + " linked to both " + it->second.text() +
                                " and " + issn_l.text());
        return;
    }
    mapping_.emplace(issn, issn_l);
}

std::optional<Issn> IssnLinkTable::resolve(const Issn& issn) const {
    const auto it = mapping_.find(issn);
    if (it == mapping_.end())
        return std::nullopt;
    return it->second;
}

Issn IssnLinkTable::link_key(const Issn& issn) const { return resolve(issn).value_or(issn); }

// ---------------------------------------------------------------------------
// JournalRegistry
// ---------------------------------------------------------------------------

JournalRegistry JournalRegistry::load(const std::string& path, RegistrySource source,
                                      std::vector<RegistryDiagnostic>* diagnostics) {
    auto in = open_or_throw(path);
    CsvReader reader(in);

    auto header = reader.next();
    if (!header || header->size() < 4 || (*header)[0] != "issn" || (*header)[1] != "issn_l" ||
        (*header)[2] != "title" || (*header)[3] != "oa_since_year")
        throw ParseError("expected header 'issn,issn_l,title,oa_since_year[,embargo_months]' in " +
                             path,
                         1);
    const bool has_embargo_column = header->size() >= 5 && (*header)[4] == "embargo_months";

    JournalRegistry registry;
    while (auto row = reader.next()) {
        if (is_blank_row(*row))
            continue;
        const std::size_t line = reader.line();
        try {
            if (row->size() < 4)
                throw ParseError("journal row needs at least 4 fields", line);

            JournalRegistryEntry entry;
            entry.source = source;
            for (const auto& raw : split_list((*row)[0]))
                entry.issns.insert(normalize_issn(raw));
            if (entry.issns.empty())
                throw ParseError("journal row without any ISSN", line);
            if (!(*row)[1].empty())
                entry.issn_l = normalize_issn((*row)[1]);
            entry.title = (*row)[2];
            if (!(*row)[3].empty())
                entry.oa_since_year = parse_year((*row)[3], line);
            if (has_embargo_column && row->size() >= 5 && !(*row)[4].empty()) {
                if (source != RegistrySource::PmcLike)
                    throw ParseError("embargo_months is only valid for pmc-sourced registries",
                                     line);
                const int months = std::stoi((*row)[4]);
                if (months < 0)
                    throw ParseError("embargo_months must be >= 0", line);
                entry.pmc_embargo_months = months;
            }
            registry.add(std::move(entry));
        } catch (const ChecksumError& e) {
            report(diagnostics, line, "checksum", e.what());
        } catch (const ConflictError& e) {
            report(diagnostics, line, "conflict", e.what());
        } catch (const FormatError& e) {
            report(diagnostics, line, "parse", e.what());
        } catch (const ParseError& e) {
            report(diagnostics, line, "parse", e.what());
        }
    }
    return registry;
}

void JournalRegistry::add(JournalRegistryEntry entry) {
    // An ISSN already claimed by an existing entry either merges the two
    // (equal titles, compatible fields) or is a conflict.
    std::optional<std::size_t> target;
    for (const auto& issn : entry.issns) {
        const auto existing = find_direct(issn);
        if (!existing)
            continue;
        if (target && *target != *existing)
            throw ConflictError("ISSN " + issn.text() + " would merge distinct entries '" +
                                entries_[*target].title + "' and '" + entries_[*existing].title +
                                "'");
        target = existing;
    }

    if (!target) {
        entries_.push_back(std::move(entry));
        const std::size_t index = entries_.size() - 1;
        for (const auto& issn : entries_[index].issns)
            by_issn_.emplace(issn, index);
        if (entries_[index].issn_l)
            by_issn_l_.emplace(*entries_[index].issn_l, index);
        return;
    }

    JournalRegistryEntry& host = entries_[*target];
    if (normalize_title(host.title) != normalize_title(entry.title)) {
        std::string shared;
        for (const auto& issn : entry.issns)
            if (host.issns.contains(issn))
                shared += (shared.empty() ? "" : ";") + issn.text();
        throw ConflictError("ISSN " + shared + " claimed by both '" + host.title + "' and '" +
                            entry.title + "'");
    }
    if (host.issn_l && entry.issn_l && *host.issn_l != *entry.issn_l)
        throw ConflictError("entries for '" + host.title + "' disagree on ISSN-L (" +
                            host.issn_l->text() + " vs " + entry.issn_l->text() + ")");
    if (host.pmc_embargo_months && entry.pmc_embargo_months &&
        *host.pmc_embargo_months != *entry.pmc_embargo_months)
        throw ConflictError("entries for '" + host.title + "' disagree on embargo_months");

    if (!host.issn_l && entry.issn_l) {
        host.issn_l = entry.issn_l;
        by_issn_l_.emplace(*entry.issn_l, *target);
    }
    if (!host.pmc_embargo_months)
        host.pmc_embargo_months = entry.pmc_embargo_months;
    if (entry.oa_since_year)
        host.oa_since_year = host.oa_since_year
                                 ? std::min(*host.oa_since_year, *entry.oa_since_year)
                                 : entry.oa_since_year;
    for (const auto& issn : entry.issns) {
        host.issns.insert(issn);
        by_issn_.emplace(issn, *target);
    }
}

std::optional<std::size_t> JournalRegistry::find_direct(const Issn& issn) const {
    const auto it = by_issn_.find(issn);
    if (it == by_issn_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::size_t> JournalRegistry::find_by_declared_issn_l(const Issn& issn_l) const {
    const auto it = by_issn_l_.find(issn_l);
    if (it == by_issn_l_.end())
        return std::nullopt;
    return it->second;
}

std::optional<FullOAMatch> JournalRegistry::lookup(const std::set<Issn>& issns, int year,
                                                   const IssnLinkTable& links) const {
    auto year_ok = [year](const JournalRegistryEntry& entry) {
        return !entry.oa_since_year || year >= *entry.oa_since_year;
    };

    for (const auto& issn : issns)
        if (const auto index = find_direct(issn); index && year_ok(entries_[*index]))
            return FullOAMatch{entries_[*index], MatchVia::Direct};

    // ISSN-L resolution only when no direct hit, to keep provenance explicit.
    for (const auto& issn : issns) {
        const auto linked = links.resolve(issn);
        if (!linked)
            continue;
        if (const auto index = find_direct(*linked); index && year_ok(entries_[*index]))
            return FullOAMatch{entries_[*index], MatchVia::IssnL};
        // An entry may also carry the link target as its declared ISSN-L.
        if (const auto index = find_by_declared_issn_l(*linked);
            index && year_ok(entries_[*index]))
            return FullOAMatch{entries_[*index], MatchVia::IssnL};
    }
    return std::nullopt;
}

bool JournalRegistry::contains(const std::set<Issn>& issns, const IssnLinkTable& links) const {
    for (const auto& issn : issns)
        if (find_direct(issn))
            return true;
    for (const auto& issn : issns) {
        const auto linked = links.resolve(issn);
        if (!linked)
            continue;
        if (find_direct(*linked) || find_by_declared_issn_l(*linked))
            return true;
    }
    return false;
}

std::optional<int> JournalRegistry::pmc_embargo_months(const std::set<Issn>& issns,
                                                       const IssnLinkTable& links) const {
    const auto match = lookup(issns, 9999, links);
    if (!match || match->entry.source != RegistrySource::PmcLike)
        return std::nullopt;
    return match->entry.pmc_embargo_months;
}

void JournalRegistry::save(std::ostream& out) const {
    write_csv_record(out, {"issn", "issn_l", "title", "oa_since_year", "embargo_months"});

    std::vector<const JournalRegistryEntry*> sorted;
    sorted.reserve(entries_.size());
    for (const auto& entry : entries_)
        sorted.push_back(&entry);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        return *a->issns.begin() < *b->issns.begin();
    });

    for (const auto* entry : sorted) {
        std::string issns;
        for (const auto& issn : entry->issns)
            issns += (issns.empty() ? "" : ";") + issn.text();
        write_csv_record(out, {
                                  issns,
                                  entry->issn_l ? entry->issn_l->text() : "",
                                  entry->title,
                                  entry->oa_since_year ? std::to_string(*entry->oa_since_year) : "",
                                  entry->pmc_embargo_months
                                      ? std::to_string(*entry->pmc_embargo_months)
                                      : "",
                              });
    }
}

void JournalRegistry::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write file: " + path);
    save(out);
}

bool JournalRegistry::operator==(const JournalRegistry& other) const {
    auto key = [](const JournalRegistryEntry& e) { return *e.issns.begin(); };
    auto sorted = [&key](const std::vector<JournalRegistryEntry>& entries) {
        std::vector<JournalRegistryEntry> v(entries);
        std::sort(v.begin(), v.end(),
                  [&key](const auto& a, const auto& b) { return key(a) < key(b); });
        return v;
    };
    return sorted(entries_) == sorted(other.entries_);
}

// ---------------------------------------------------------------------------
// RepositoryRegistry
// ---------------------------------------------------------------------------

std::string_view to_string(RepositoryKind k) noexcept {
    switch (k) {
    case RepositoryKind::Institutional:
        return "institutional";
    case RepositoryKind::Disciplinary:
        return "disciplinary";
    case RepositoryKind::Aggregator:
        return "aggregator";
    case RepositoryKind::Governmental:
        return "governmental";
    case RepositoryKind::Undetermined:
        return "undetermined";
    }
    return "undetermined";
}

std::optional<RepositoryKind> repository_kind_from_string(std::string_view s) noexcept {
    if (s == "institutional")
        return RepositoryKind::Institutional;
    if (s == "disciplinary")
        return RepositoryKind::Disciplinary;
    if (s == "aggregator")
        return RepositoryKind::Aggregator;
    if (s == "governmental")
        return RepositoryKind::Governmental;
    if (s == "undetermined")
        return RepositoryKind::Undetermined;
    return std::nullopt;
}

std::string_view to_string(HostClass c) noexcept {
    switch (c) {
    case HostClass::Institutional:
        return "institutional";
    case HostClass::Disciplinary:
        return "disciplinary";
    case HostClass::Aggregator:
        return "aggregator";
    case HostClass::Governmental:
        return "governmental";
    case HostClass::Undetermined:
        return "undetermined";
    case HostClass::Unregistered:
        return "unregistered";
    }
    return "unregistered";
}

RepositoryRegistry RepositoryRegistry::load(const std::string& path,
                                            std::vector<RegistryDiagnostic>* diagnostics) {
    auto in = open_or_throw(path);
    CsvReader reader(in);

    auto header = reader.next();
    if (!header || header->size() < 3 || (*header)[0] != "repo_id" || (*header)[1] != "kind" ||
        (*header)[2] != "url_prefixes")
        throw ParseError("expected header 'repo_id,kind,url_prefixes' in " + path, 1);

    RepositoryRegistry registry;
    while (auto row = reader.next()) {
        if (is_blank_row(*row))
            continue;
        const std::size_t line = reader.line();
        try {
            if (row->size() < 3)
                throw ParseError("repository row needs 3 fields", line);
            RepositoryEntry entry;
            entry.repo_id = (*row)[0];
            const auto kind = repository_kind_from_string(to_lower_ascii((*row)[1]));
            if (!kind)
                throw UnknownKindError("unknown repository kind '" + (*row)[1] + "'");
            entry.kind = *kind;
            for (const auto& prefix : split_list((*row)[2]))
                entry.url_prefixes.push_back(normalize_url(prefix));
            if (entry.url_prefixes.empty())
                throw ParseError("repository row without url prefixes", line);
            registry.add(std::move(entry));
        } catch (const UnknownKindError& e) {
            report(diagnostics, line, "unknown_kind", e.what());
        } catch (const ParseError& e) {
            report(diagnostics, line, "parse", e.what());
        } catch (const FormatError& e) {
            report(diagnostics, line, "parse", e.what());
        }
    }
    return registry;
}

void RepositoryRegistry::add(RepositoryEntry entry) {
    for (auto& prefix : entry.url_prefixes)
        prefix = normalize_url(prefix);
    entries_.push_back(std::move(entry));
    const std::size_t index = entries_.size() - 1;
    for (const auto& prefix : entries_[index].url_prefixes) {
        by_prefix_.emplace(prefix, index);
        longest_prefix_ = std::max(longest_prefix_, prefix.size());
    }
}

const RepositoryEntry* RepositoryRegistry::match(std::string_view url) const {
    const std::string normalized = normalize_url(url);
    const std::string_view view(normalized);
    for (std::size_t len = std::min(longest_prefix_, normalized.size()); len >= 1; --len) {
        const auto it = by_prefix_.find(view.substr(0, len));
        if (it != by_prefix_.end() && url_has_prefix(normalized, it->first))
            return &entries_[it->second];
    }
    return nullptr;
}

HostClass RepositoryRegistry::classify_host(std::string_view url) const {
    const RepositoryEntry* entry = match(url);
    if (!entry)
        return HostClass::Unregistered;
    switch (entry->kind) {
    case RepositoryKind::Institutional:
        return HostClass::Institutional;
    case RepositoryKind::Disciplinary:
        return HostClass::Disciplinary;
    case RepositoryKind::Aggregator:
        return HostClass::Aggregator;
    case RepositoryKind::Governmental:
        return HostClass::Governmental;
    case RepositoryKind::Undetermined:
        return HostClass::Undetermined;
    }
    return HostClass::Unregistered;
}

void RepositoryRegistry::save(std::ostream& out) const {
    write_csv_record(out, {"repo_id", "kind", "url_prefixes"});

    std::vector<const RepositoryEntry*> sorted;
    sorted.reserve(entries_.size());
    for (const auto& entry : entries_)
        sorted.push_back(&entry);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return a->repo_id < b->repo_id; });

    for (const auto* entry : sorted) {
        std::string prefixes;
        for (const auto& prefix : entry->url_prefixes)
            prefixes += (prefixes.empty() ? "" : ";") + prefix;
        write_csv_record(out, {entry->repo_id, std::string(to_string(entry->kind)), prefixes});
    }
}

void RepositoryRegistry::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write file: " + path);
    save(out);
}

bool RepositoryRegistry::operator==(const RepositoryRegistry& other) const {
    auto sorted = [](const std::vector<RepositoryEntry>& entries) {
        std::vector<RepositoryEntry> v(entries);
        std::sort(v.begin(), v.end(),
                  [](const auto& a, const auto& b) { return a.repo_id < b.repo_id; });
        return v;
    };
    return sorted(entries_) == sorted(other.entries_);
}

} // namespace oaclass
