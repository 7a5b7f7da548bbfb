#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oaclass/issn.hpp"

namespace oaclass {

enum class RegistrySource { DoajLike, GoldListLike, PmcLike };

std::string_view to_string(RegistrySource s) noexcept;
std::optional<RegistrySource> registry_source_from_string(std::string_view s) noexcept;

// One full-OA (or PMC-listed) journal. A missing oa_since_year means the
// journal counts as open for all years; pmc_embargo_months only exists for
// PMC-sourced entries.
struct JournalRegistryEntry {
    std::set<Issn> issns;
    std::optional<Issn> issn_l;
    std::string title;
    std::optional<int> oa_since_year;
    RegistrySource source = RegistrySource::DoajLike;
    std::optional<int> pmc_embargo_months;

    bool operator==(const JournalRegistryEntry&) const = default;
};

enum class MatchVia { Direct, IssnL };

struct FullOAMatch {
    JournalRegistryEntry entry;
    MatchVia matched_via = MatchVia::Direct;

    // PMC lists journals that only open content after an embargo; such a
    // match is delayed-OA evidence, not full-OA evidence.
    bool grants_full_oa() const noexcept {
        return !(entry.source == RegistrySource::PmcLike &&
                 entry.pmc_embargo_months.value_or(0) > 0);
    }

    bool is_pmc_embargoed() const noexcept { return !grants_full_oa(); }

    bool operator==(const FullOAMatch&) const = default;
};

// ISSN -> linking ISSN (ISSN-L). Self-mappings are completed automatically so
// resolution is idempotent.
class IssnLinkTable {
public:
    IssnLinkTable() = default;

    // CSV with header "issn,issn_l". Throws ParseError / ChecksumError /
    // ConflictError (an ISSN-L that maps onto a different ISSN-L).
    static IssnLinkTable load(const std::string& path);

    // Throws ConflictError if `issn` is already linked elsewhere, or if the
    // link target is itself linked to a different ISSN-L.
    void add(const Issn& issn, const Issn& issn_l);

    std::optional<Issn> resolve(const Issn& issn) const;

    // resolve() with identity fallback: the canonical grouping key.
    Issn link_key(const Issn& issn) const;

    std::size_t size() const noexcept { return mapping_.size(); }

private:
    std::map<Issn, Issn> mapping_;
};

// Row-level problem found while loading a registry file.
struct RegistryDiagnostic {
    std::size_t line = 0;
    std::string kind; // "parse" | "checksum" | "conflict" | "merge"
    std::string message;
};

// Full-OA journal registry with ISSN and ISSN-L lookup.
class JournalRegistry {
public:
    // CSV with header "issn,issn_l,title,oa_since_year[,embargo_months]"; the
    // issn column may hold several ';'-separated ISSNs. Rows sharing an ISSN
    // merge when their titles match case-insensitively (earliest
    // oa_since_year wins); otherwise the load reports a conflict. With
    // diagnostics == nullptr the first problem throws; otherwise problems are
    // collected and offending rows skipped.
    static JournalRegistry load(const std::string& path, RegistrySource source,
                                std::vector<RegistryDiagnostic>* diagnostics = nullptr);

    void add(JournalRegistryEntry entry);

    // A record matches when any of its ISSNs hits an entry directly or via
    // ISSN-L linking, and the publication year passes the entry's
    // transition-year gate (absent year = always open).
    std::optional<FullOAMatch> lookup(const std::set<Issn>& issns, int year,
                                      const IssnLinkTable& links) const;

    // Year-independent list membership (used by the delayed detector's
    // full-OA exclusion).
    bool contains(const std::set<Issn>& issns, const IssnLinkTable& links) const;

    // PMC embargo months for the journal owning any of these ISSNs.
    std::optional<int> pmc_embargo_months(const std::set<Issn>& issns,
                                          const IssnLinkTable& links) const;

    const std::vector<JournalRegistryEntry>& entries() const noexcept { return entries_; }

    // Canonical CSV serialization; load(save(r)) == r.
    void save(std::ostream& out) const;
    void save(const std::string& path) const;

    // Entry-set equality; insertion order is not part of the value.
    bool operator==(const JournalRegistry& other) const;

private:
    std::optional<std::size_t> find_direct(const Issn& issn) const;
    std::optional<std::size_t> find_by_declared_issn_l(const Issn& issn_l) const;

    std::vector<JournalRegistryEntry> entries_;
    std::map<Issn, std::size_t> by_issn_;
    std::multimap<Issn, std::size_t> by_issn_l_; // declared ISSN-L, lookup only
};

enum class RepositoryKind { Institutional, Disciplinary, Aggregator, Governmental, Undetermined };

std::string_view to_string(RepositoryKind k) noexcept;
std::optional<RepositoryKind> repository_kind_from_string(std::string_view s) noexcept;

// classify_host() result: a known repository kind or Unregistered when no
// prefix matches.
enum class HostClass {
    Institutional,
    Disciplinary,
    Aggregator,
    Governmental,
    Undetermined,
    Unregistered,
};

std::string_view to_string(HostClass c) noexcept;

struct RepositoryEntry {
    std::string repo_id;
    std::vector<std::string> url_prefixes; // normalized: lowercase host, no scheme
    RepositoryKind kind = RepositoryKind::Undetermined;

    bool operator==(const RepositoryEntry&) const = default;
};

// OpenDOAR-style repository registry with longest-prefix URL classification.
class RepositoryRegistry {
public:
    // CSV with header "repo_id,kind,url_prefixes" (prefixes ';'-separated).
    // Throws ParseError / UnknownKindError, or collects into diagnostics.
    static RepositoryRegistry load(const std::string& path,
                                   std::vector<RegistryDiagnostic>* diagnostics = nullptr);

    void add(RepositoryEntry entry);

    // Longest matching normalized prefix wins; no match -> Unregistered.
    HostClass classify_host(std::string_view url) const;

    // The entry backing classify_host, when any.
    const RepositoryEntry* match(std::string_view url) const;

    const std::vector<RepositoryEntry>& entries() const noexcept { return entries_; }

    void save(std::ostream& out) const;
    void save(const std::string& path) const;

    bool operator==(const RepositoryRegistry& other) const;

private:
    std::vector<RepositoryEntry> entries_;
    // prefix -> entry index; queries walk truncations of the normalized URL
    // from longest to shortest, so lookup cost scales with URL length.
    std::map<std::string, std::size_t, std::less<>> by_prefix_;
    std::size_t longest_prefix_ = 0;
};

} // namespace oaclass
