#include "oaclass/delayed.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#include "oaclass/classifier.hpp"
#include "oaclass/csv.hpp"
#include "oaclass/errors.hpp"

namespace oaclass {

namespace {

// Months since year 0 for month-level window arithmetic.
long month_index(const PartialDate& date) {
    return static_cast<long>(date.year()) * 12 + static_cast<long>(date.month().value_or(1)) - 1;
}

std::string format_share(double share) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", share);
    return buf;
}

} // namespace

std::string_view to_string(DelayedVerdict v) noexcept {
    switch (v) {
    case DelayedVerdict::Delayed:
        return "delayed";
    case DelayedVerdict::NotDelayed:
        return "not_delayed";
    case DelayedVerdict::InsufficientData:
        return "insufficient_data";
    }
    return "insufficient_data";
}

JournalCohortStats detect_delayed(const Issn& issn_l,
                                  const std::vector<ArticleObservation>& articles,
                                  const JournalRegistry& registry, const IssnLinkTable& links,
                                  const CohortConfig& config, const PartialDate& reference_date) {
    if (registry.contains({issn_l}, links))
        throw RegistryConflictError("journal " + issn_l.text() +
                                    " is registered as full OA; the cohort heuristic does not "
                                    "apply");

    JournalCohortStats stats{issn_l};

    const long ref = month_index(reference_date);
    const long old_boundary = ref - config.horizon_months;
    const long recent_boundary = ref - config.recent_months;

    for (const auto& article : articles) {
        if (article.publication_date.precision() == DatePrecision::Year)
            continue; // too coarse for window assignment
        const long m = month_index(article.publication_date);
        if (m > ref)
            continue; // future-dated relative to the reference
        if (m < old_boundary) {
            ++stats.old_cohort.n;
            stats.old_cohort.open += article.publisher_open ? 1 : 0;
        } else if (m >= recent_boundary) {
            ++stats.recent_cohort.n;
            stats.recent_cohort.open += article.publisher_open ? 1 : 0;
        }
    }

    if (stats.old_cohort.n < config.min_cohort || stats.recent_cohort.n < config.min_cohort) {
        stats.verdict = DelayedVerdict::InsufficientData;
    } else if (stats.old_cohort.share() >= config.theta_old &&
               stats.recent_cohort.share() <= config.theta_recent) {
        stats.verdict = DelayedVerdict::Delayed;
    } else {
        stats.verdict = DelayedVerdict::NotDelayed;
    }
    return stats;
}

std::optional<int> detect_delayed_from_metadata(
    const std::vector<ArticleLicenseInfo>& articles,
    const std::vector<std::string>& open_license_patterns, int immediate_grace_days) {
    std::size_t open_licensed = 0;
    std::size_t past_grace = 0;
    std::vector<std::int64_t> positive_delays;

    for (const auto& article : articles) {
        // The article's effective delay is the earliest moment any of its
        // open licenses takes effect.
        std::optional<std::int64_t> article_delay;
        for (const auto& license : article.licenses) {
            if (!match_license(license.url, open_license_patterns))
                continue;
            const auto delay = effective_delay_days(license, article.publication_date);
            if (!article_delay || delay < *article_delay)
                article_delay = delay;
        }
        if (!article_delay)
            continue;
        ++open_licensed;
        if (*article_delay > immediate_grace_days)
            ++past_grace;
        if (*article_delay > 0)
            positive_delays.push_back(*article_delay);
    }

    if (open_licensed == 0 || past_grace * 2 < open_licensed)
        return std::nullopt;
    if (positive_delays.empty())
        return std::nullopt;
    std::sort(positive_delays.begin(), positive_delays.end());
    return static_cast<int>(positive_delays[(positive_delays.size() - 1) / 2]);
}

std::map<Issn, int> load_pmc_embargoes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open file: " + path);
    CsvReader reader(in);

    auto header = reader.next();
    if (!header || header->size() < 3 || (*header)[0] != "issn" ||
        (*header)[1] != "journal_title" || (*header)[2] != "embargo_months")
        throw ParseError("expected header 'issn,journal_title,embargo_months' in " + path, 1);

    std::map<Issn, int> embargoes;
    while (auto row = reader.next()) {
        if (row->size() == 1 && (*row)[0].empty())
            continue;
        if (row->size() < 3)
            throw ParseError("PMC row needs 3 fields", reader.line());
        const Issn issn = normalize_issn((*row)[0]);
        int months = 0;
        try {
            months = std::stoi((*row)[2]);
        } catch (const std::exception&) {
            throw ParseError("invalid embargo_months '" + (*row)[2] + "'", reader.line());
        }
        if (months < 0)
            throw ParseError("embargo_months must be >= 0, got " + (*row)[2], reader.line());
        embargoes[issn] = months;
    }
    return embargoes;
}

std::string DelayedRegistryRow::strategies() const {
    std::string out;
    auto add = [&out](std::string_view name) {
        if (!out.empty())
            out += "+";
        out += name;
    };
    if (by_cohort)
        add("cohort");
    if (by_metadata)
        add("metadata");
    if (by_pmc)
        add("pmc");
    return out;
}

std::set<Issn> DelayedRegistry::issn_set() const {
    std::set<Issn> issns;
    for (const auto& row : rows)
        issns.insert(row.issn_l);
    return issns;
}

void DelayedRegistry::save(std::ostream& out) const {
    write_csv_record(out, {"issn_l", "title", "strategies", "embargo_months", "old_share",
                           "recent_share", "n_old", "n_recent"});
    for (const auto& row : rows)
        write_csv_record(
            out, {row.issn_l.text(), row.title, row.strategies(),
                  row.embargo_months ? std::to_string(*row.embargo_months) : "",
                  row.old_share ? format_share(*row.old_share) : "",
                  row.recent_share ? format_share(*row.recent_share) : "",
                  row.n_old ? std::to_string(*row.n_old) : "",
                  row.n_recent ? std::to_string(*row.n_recent) : ""});
}

void DelayedRegistry::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write file: " + path);
    save(out);
}

DelayedRegistry DelayedRegistry::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open file: " + path);
    CsvReader reader(in);

    auto header = reader.next();
    if (!header || header->empty() || (*header)[0] != "issn_l")
        throw ParseError("expected a delayed-registry CSV header in " + path, 1);

    DelayedRegistry registry;
    while (auto row = reader.next()) {
        if (row->size() == 1 && (*row)[0].empty())
            continue;
        if (row->size() < 3)
            throw ParseError("delayed-registry row needs at least 3 fields", reader.line());
        DelayedRegistryRow out{normalize_issn((*row)[0])};
        out.title = (*row)[1];
        const std::string& strategies = (*row)[2];
        out.by_cohort = strategies.find("cohort") != std::string::npos;
        out.by_metadata = strategies.find("metadata") != std::string::npos;
        out.by_pmc = strategies.find("pmc") != std::string::npos;
        if (row->size() > 3 && !(*row)[3].empty())
            out.embargo_months = std::stoi((*row)[3]);
        registry.rows.push_back(std::move(out));
    }
    return registry;
}

DelayedRegistry build_delayed_registry(const std::vector<JournalCohortStats>& cohort_verdicts,
                                       const std::map<Issn, int>& metadata_embargo_days,
                                       const std::map<Issn, int>& pmc_embargoes,
                                       const std::map<Issn, std::string>& titles) {
    std::map<Issn, DelayedRegistryRow> merged;

    auto row_for = [&merged, &titles](const Issn& issn) -> DelayedRegistryRow& {
        auto it = merged.find(issn);
        if (it == merged.end()) {
            it = merged.emplace(issn, DelayedRegistryRow{issn}).first;
            if (const auto title = titles.find(issn); title != titles.end())
                it->second.title = title->second;
        }
        return it->second;
    };

    for (const auto& stats : cohort_verdicts) {
        if (stats.verdict != DelayedVerdict::Delayed)
            continue;
        auto& row = row_for(stats.issn_l);
        row.by_cohort = true;
        row.old_share = stats.old_cohort.share();
        row.recent_share = stats.recent_cohort.share();
        row.n_old = stats.old_cohort.n;
        row.n_recent = stats.recent_cohort.n;
    }

    for (const auto& [issn, days] : metadata_embargo_days) {
        auto& row = row_for(issn);
        row.by_metadata = true;
        if (!row.embargo_months)
            row.embargo_months = static_cast<int>(std::lround(days / 30.44));
    }

    // PMC months are curated; they override a metadata-derived estimate.
    for (const auto& [issn, months] : pmc_embargoes) {
        if (months <= 0)
            continue; // immediate access: not a delayed journal
        auto& row = row_for(issn);
        row.by_pmc = true;
        row.embargo_months = months;
    }

    DelayedRegistry registry;
    registry.rows.reserve(merged.size());
    for (auto& [issn, row] : merged)
        registry.rows.push_back(std::move(row));
    return registry;
}

} // namespace oaclass
