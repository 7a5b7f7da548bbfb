// oaclass — classify scholarly records into open-access classes from local
// evidence snapshots, detect delayed-OA journals, and aggregate share reports.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oaclass/classifier.hpp"
#include "oaclass/config.hpp"
#include "oaclass/delayed.hpp"
#include "oaclass/errors.hpp"
#include "oaclass/evidence.hpp"
#include "oaclass/harvest.hpp"
#include "oaclass/ingest.hpp"
#include "oaclass/oai.hpp"
#include "oaclass/report.hpp"
#include "oaclass/text.hpp"

namespace fs = std::filesystem;
using namespace oaclass;

namespace {

std::ofstream open_output(const std::string& path) {
    if (const auto parent = fs::path(path).parent_path(); !parent.empty())
        fs::create_directories(parent);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path);
    return out;
}

void for_each_line(const std::string& path, const std::function<void(const std::string&, std::size_t)>& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim_view(line).empty())
            fn(line, line_no);
    }
}

std::string cache_dir() {
    if (const char* dir = std::getenv("OACLASS_CACHE_DIR"))
        return dir;
    return ".oaclass-cache";
}

void print_parse_report(const ParseReport& report) {
    std::cerr << report.path << ": " << report.yielded << "/" << report.lines_total
              << " lines parsed";
    if (!report.errors.empty())
        std::cerr << ", " << report.errors.size() << " skipped";
    if (!report.warnings.empty())
        std::cerr << ", " << report.warnings.size() << " warnings";
    std::cerr << "\n";
    for (const auto& issue : report.errors)
        std::cerr << "  line " << issue.line << ": " << issue.message << "\n";
    for (const auto& issue : report.warnings)
        std::cerr << "  warning line " << issue.line << ": " << issue.message << "\n";
}

RegistrySource parse_source(const std::string& text) {
    const auto source = registry_source_from_string(text);
    if (!source)
        throw ConfigError("unknown registry source '" + text + "' (doaj, gold_list, pmc)");
    return *source;
}

// ---------------------------------------------------------------------------
// registry validate / build
// ---------------------------------------------------------------------------

struct RegistryArgs {
    std::string journals;
    std::string source = "doaj";
    std::string repos;
    std::string links;
    std::string pmc;
    std::string out;
    std::string repos_out;
};

int run_registry_validate(const RegistryArgs& args) {
    bool clean = true;

    if (!args.journals.empty()) {
        std::vector<RegistryDiagnostic> diagnostics;
        const auto registry =
            JournalRegistry::load(args.journals, parse_source(args.source), &diagnostics);
        std::cout << args.journals << ": " << registry.entries().size() << " journal entries";
        if (!diagnostics.empty()) {
            std::cout << ", " << diagnostics.size() << " problems\n";
            for (const auto& d : diagnostics)
                std::cout << "  line " << d.line << " [" << d.kind << "] " << d.message << "\n";
            clean = false;
        } else {
            std::cout << ", no problems\n";
        }
    }
    if (!args.repos.empty()) {
        std::vector<RegistryDiagnostic> diagnostics;
        const auto registry = RepositoryRegistry::load(args.repos, &diagnostics);
        std::cout << args.repos << ": " << registry.entries().size() << " repository entries";
        if (!diagnostics.empty()) {
            std::cout << ", " << diagnostics.size() << " problems\n";
            for (const auto& d : diagnostics)
                std::cout << "  line " << d.line << " [" << d.kind << "] " << d.message << "\n";
            clean = false;
        } else {
            std::cout << ", no problems\n";
        }
    }
    if (!args.links.empty()) {
        const auto links = IssnLinkTable::load(args.links);
        std::cout << args.links << ": " << links.size() << " link entries, no problems\n";
    }
    if (!args.pmc.empty()) {
        const auto embargoes = load_pmc_embargoes(args.pmc);
        std::cout << args.pmc << ": " << embargoes.size() << " embargo entries, no problems\n";
    }
    return clean ? 0 : 1;
}

int run_registry_build(const RegistryArgs& args) {
    if (!args.journals.empty()) {
        if (args.out.empty())
            throw ConfigError("registry build needs --out for the journal registry");
        const auto registry = JournalRegistry::load(args.journals, parse_source(args.source));
        registry.save(args.out);
        std::cerr << "wrote " << registry.entries().size() << " merged journal entries to "
                  << args.out << "\n";
    }
    if (!args.repos.empty()) {
        if (args.repos_out.empty())
            throw ConfigError("registry build needs --repos-out for the repository registry");
        const auto registry = RepositoryRegistry::load(args.repos);
        registry.save(args.repos_out);
        std::cerr << "wrote " << registry.entries().size() << " repository entries to "
                  << args.repos_out << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// harvest
// ---------------------------------------------------------------------------

struct HarvestArgs {
    std::string endpoint;
    std::string protocol = "oai";
    std::string out;
    std::string from, until, set_spec;
    std::string ids_file;
    std::string config_file;
    std::optional<double> rate;
    std::optional<int> retries;
    std::optional<int> backoff_ms;
    bool resume = false;
    bool identify = false;
    std::size_t max_pages = 0;
};

int run_harvest(const HarvestArgs& args) {
    Politeness politeness;
    if (!args.config_file.empty())
        politeness = load_tool_config(args.config_file).politeness;
    if (args.rate)
        politeness.max_requests_per_second = *args.rate;
    if (args.retries)
        politeness.max_retries = *args.retries;
    if (args.backoff_ms)
        politeness.backoff_base_ms = *args.backoff_ms;

    HarvestJob job;
    job.endpoint_url = args.endpoint;
    job.politeness = politeness;
    if (!args.from.empty())
        job.from = args.from;
    if (!args.until.empty())
        job.until = args.until;
    if (!args.set_spec.empty())
        job.set_spec = args.set_spec;

    if (args.identify) {
        const auto identity = identify_oai(args.endpoint, job.politeness);
        std::cout << "repositoryName: " << identity.repository_name << "\n"
                  << "baseURL: " << identity.base_url << "\n"
                  << "protocolVersion: " << identity.protocol_version << "\n"
                  << "earliestDatestamp: " << identity.earliest_datestamp << "\n";
        return 0;
    }

    if (args.protocol == "oai") {
        job.protocol = HarvestProtocol::OaiPmh;
        std::string out_dir = args.out;
        if (out_dir.empty()) {
            std::string slug;
            for (const char c : args.endpoint)
                slug.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '-');
            out_dir = (fs::path(cache_dir()) / "harvest" / slug).string();
            std::cerr << "no --out given, using " << out_dir << "\n";
        }
        if (!args.resume && fs::exists(fs::path(out_dir) / "state.json"))
            fs::remove(fs::path(out_dir) / "state.json");
        HarvestOptions options{.max_pages_per_run = args.max_pages};
        const auto result = harvest_oai(job, out_dir, options);
        std::cerr << "harvested " << result.records_written << " records in "
                  << result.requests_made << " requests -> " << result.records_path << "\n";
        if (!result.state.complete)
            std::cerr << "interrupted after " << result.state.pages_done
                      << " pages; rerun with --resume to continue\n";
        return 0;
    }

    if (args.protocol == "json") {
        job.protocol = HarvestProtocol::PagedJson;
        if (args.out.empty())
            throw ConfigError("harvest --protocol json needs --out FILE");
        std::vector<Doi> ids;
        if (!args.ids_file.empty())
            for_each_line(args.ids_file,
                          [&ids](const std::string& line, std::size_t) {
                              ids.push_back(normalize_doi(line));
                          });
        const auto result = fetch_paged_json(job, args.out, ids);
        std::cerr << "fetched " << result.items_written << " items in " << result.requests_made
                  << " requests -> " << args.out << "\n";
        for (const auto& miss : result.misses)
            std::cerr << "  miss: " << miss << "\n";
        return 0;
    }

    throw ConfigError("unknown protocol '" + args.protocol + "' (oai, json)");
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestArgs {
    std::vector<std::string> crossref;
    std::vector<std::string> locations;
    std::vector<std::string> oai_dirs;
    std::string records;
    std::string journals;
    std::string journals_source = "doaj";
    std::string links;
    std::string out;
    std::string orphans;
};

std::vector<PublicationRecord> load_records_file(const std::string& path) {
    std::vector<PublicationRecord> records;
    for_each_line(path, [&records](const std::string& line, std::size_t line_no) {
        try {
            records.push_back(record_from_json_line(line));
        } catch (const Error& e) {
            throw ParseError(std::string("bad record line: ") + e.what(), line_no);
        }
    });
    return records;
}

int run_ingest(const IngestArgs& args) {
    if (args.out.empty())
        throw ConfigError("ingest needs --out for the bundle NDJSON");
    if (args.crossref.empty() && args.records.empty())
        throw ConfigError("ingest needs --records or at least one --crossref snapshot");

    EvidenceIndex index;
    std::vector<CrossrefWork> all_works;

    for (const auto& path : args.crossref) {
        ParseReport report;
        const std::string tag = "crossref:" + fs::path(path).filename().string();
        parse_crossref_snapshot(path, report, [&](CrossrefWork work) {
            all_works.push_back(work);
            index.add_crossref(std::move(work), tag);
        });
        print_parse_report(report);
    }
    for (const auto& path : args.locations) {
        ParseReport report;
        const std::string tag = "locations:" + fs::path(path).filename().string();
        parse_location_snapshot(path, report, [&](LocationRecord record) {
            index.add_locations(std::move(record), tag);
        });
        print_parse_report(report);
    }
    for (const auto& dir : args.oai_dirs) {
        if (!fs::is_directory(dir))
            throw IoError("--oai-dir is not a directory: " + dir);
        const std::string tag = "oai:" + fs::path(dir).filename().string();
        std::vector<fs::path> pages;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.path().extension() == ".xml")
                pages.push_back(entry.path());
        std::sort(pages.begin(), pages.end());
        std::size_t records = 0, skipped = 0;
        for (const auto& page_path : pages) {
            std::ifstream in(page_path, std::ios::binary);
            std::string xml((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
            const OaiPage page = parse_oai_dc(xml);
            for (const auto& error : page.record_errors)
                std::cerr << page_path.string() << ": " << error << "\n";
            for (const auto& record : page.records) {
                if (auto evidence = oai_to_evidence(record)) {
                    index.add_oai(std::move(*evidence), tag);
                    ++records;
                } else {
                    ++skipped;
                }
            }
        }
        std::cerr << dir << ": " << records << " OAI records indexed, " << skipped
                  << " without usable evidence\n";
    }

    std::vector<PublicationRecord> records;
    if (!args.records.empty()) {
        records = load_records_file(args.records);
    } else {
        ParseReport synth;
        records = records_from_crossref(all_works, synth);
        for (const auto& warning : synth.warnings)
            std::cerr << "records: " << warning.message << "\n";
    }

    std::optional<JournalRegistry> registry;
    IssnLinkTable links;
    if (!args.journals.empty())
        registry = JournalRegistry::load(args.journals, parse_source(args.journals_source));
    if (!args.links.empty())
        links = IssnLinkTable::load(args.links);

    const auto result =
        assemble_bundles(records, index, registry ? &*registry : nullptr, links);

    auto out = open_output(args.out);
    for (const auto& bundle : result.bundles)
        out << to_json_line(bundle) << "\n";
    std::cerr << "wrote " << result.bundles.size() << " bundles to " << args.out << "\n";

    if (!args.orphans.empty()) {
        auto orphans = open_output(args.orphans);
        write_orphan_csv(orphans, result.orphans);
        std::cerr << "wrote " << result.orphans.size() << " orphans to " << args.orphans << "\n";
    } else if (!result.orphans.empty()) {
        std::cerr << result.orphans.size() << " evidence items matched no record"
                  << " (use --orphans to keep them)\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyArgs {
    std::string bundles;
    std::string repos;
    std::string config_file;
    std::string delayed;
    std::string out;
    std::optional<int> grace_days;
    std::string denylist;
    std::string patterns;
    std::string precedence;
};

std::vector<std::string> split_flag_list(const std::string& value) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= value.size()) {
        const auto sep = value.find(';', start);
        const auto end = sep == std::string::npos ? value.size() : sep;
        const auto piece = trim_view(std::string_view(value).substr(start, end - start));
        if (!piece.empty())
            parts.emplace_back(piece);
        if (sep == std::string::npos)
            break;
        start = sep + 1;
    }
    return parts;
}

ClassificationRow make_row(const EvidenceBundle& bundle, const RepositoryRegistry& repositories,
                           const ClassifierConfig& config) {
    ClassificationRow row;
    if (bundle.record.doi)
        row.doi = bundle.record.doi->value();
    if (bundle.full_oa_match && bundle.full_oa_match->entry.issn_l)
        row.journal = bundle.full_oa_match->entry.issn_l->text();
    else if (!bundle.record.issns.empty())
        row.journal = bundle.record.issns.begin()->text();
    if (!bundle.record.journal_title.empty())
        row.journal_title = bundle.record.journal_title;
    row.publication_date = bundle.record.publication_date;
    row.document_type = bundle.record.document_type;
    row.classification = classify(bundle, repositories, config);
    row.publisher_open_evidence = publisher_open_evidence(bundle, config);
    return row;
}

int run_classify(const ClassifyArgs& args) {
    if (args.out.empty())
        throw ConfigError("classify needs --out");

    ToolConfig config;
    if (!args.config_file.empty())
        config = load_tool_config(args.config_file);
    if (args.grace_days)
        config.classifier.immediate_grace_days = *args.grace_days;
    if (!args.denylist.empty())
        config.classifier.unlawful_host_denylist = split_flag_list(args.denylist);
    if (!args.patterns.empty())
        config.classifier.open_license_patterns = split_flag_list(args.patterns);
    if (!args.precedence.empty()) {
        std::vector<OAClass> precedence;
        for (const auto& code : split_flag_list(args.precedence)) {
            const auto cls = OAClass::from_code(code);
            if (!cls)
                throw ConfigError("unknown class code '" + code + "' in --precedence");
            precedence.push_back(*cls);
        }
        config.classifier.precedence = std::move(precedence);
    }
    config.classifier.validate();

    RepositoryRegistry repositories;
    if (!args.repos.empty())
        repositories = RepositoryRegistry::load(args.repos);

    if (!args.delayed.empty())
        config.classifier.delayed_journal_set = DelayedRegistry::load(args.delayed).issn_set();

    auto out = open_output(args.out);
    std::size_t classified = 0, skipped = 0;
    for_each_line(args.bundles, [&](const std::string& line, std::size_t line_no) {
        try {
            const EvidenceBundle bundle = bundle_from_json_line(line);
            out << to_json_line(make_row(bundle, repositories, config.classifier)) << "\n";
            ++classified;
        } catch (const Error& e) {
            std::cerr << "skipping bundle line " << line_no << ": " << e.what() << "\n";
            ++skipped;
        }
    });
    std::cerr << "classified " << classified << " records";
    if (skipped)
        std::cerr << " (" << skipped << " lines skipped)";
    std::cerr << " -> " << args.out << "\n";
    return skipped == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// detect-delayed
// ---------------------------------------------------------------------------

struct DetectArgs {
    std::string classifications;
    std::string journals;
    std::string journals_source = "doaj";
    std::string links;
    std::string pmc;
    std::string bundles;
    std::string config_file;
    std::string reference_date;
    std::string out;
};

int run_detect_delayed(const DetectArgs& args) {
    if (args.out.empty())
        throw ConfigError("detect-delayed needs --out");

    ToolConfig config;
    if (!args.config_file.empty())
        config = load_tool_config(args.config_file);

    JournalRegistry registry;
    if (!args.journals.empty())
        registry = JournalRegistry::load(args.journals, parse_source(args.journals_source));
    IssnLinkTable links;
    if (!args.links.empty())
        links = IssnLinkTable::load(args.links);

    // Group classification rows into per-journal article observations.
    std::map<Issn, std::vector<ArticleObservation>> articles;
    std::map<Issn, std::string> titles;
    std::optional<PartialDate> latest;
    for_each_line(args.classifications, [&](const std::string& line, std::size_t line_no) {
        ClassificationRow row = [&] {
            try {
                return classification_row_from_json_line(line);
            } catch (const Error& e) {
                throw ParseError(std::string("bad classification line: ") + e.what(), line_no);
            }
        }();
        if (!row.journal || !row.publication_date)
            return;
        std::optional<Issn> issn;
        try {
            issn = normalize_issn(*row.journal);
        } catch (const Error&) {
            std::cerr << "line " << line_no << ": journal key '" << *row.journal
                      << "' is not an ISSN, row skipped\n";
            return;
        }
        const Issn key = links.link_key(*issn);
        articles[key].push_back({*row.publication_date, row.publisher_open_evidence});
        if (row.journal_title && !titles.contains(key))
            titles[key] = *row.journal_title;
        if (!latest || compare_conservative(*latest, *row.publication_date) < 0)
            latest = *row.publication_date;
    });

    PartialDate reference = PartialDate::of_day(1900, 1, 1);
    if (!args.reference_date.empty()) {
        reference = PartialDate::parse(args.reference_date);
    } else if (latest) {
        reference = *latest;
        std::cerr << "no --reference-date given, using latest publication date "
                  << reference.to_string() << "\n";
    } else {
        throw ConfigError("no classifications with dates and no --reference-date");
    }

    std::vector<JournalCohortStats> verdicts;
    for (const auto& [issn, observations] : articles) {
        if (registry.contains({issn}, links)) {
            std::cerr << issn.text() << ": registered full-OA journal, skipped\n";
            continue;
        }
        verdicts.push_back(
            detect_delayed(issn, observations, registry, links, config.cohort, reference));
    }

    // The metadata strategy needs license timing, which classification rows
    // do not carry; it runs when the evidence bundles are provided too.
    std::map<Issn, int> metadata_embargoes;
    if (!args.bundles.empty()) {
        std::map<Issn, std::vector<ArticleLicenseInfo>> licensed;
        for_each_line(args.bundles, [&](const std::string& line, std::size_t) {
            const EvidenceBundle bundle = bundle_from_json_line(line);
            if (bundle.record.issns.empty() || bundle.publisher_licenses.empty())
                return;
            const Issn key = links.link_key(*bundle.record.issns.begin());
            licensed[key].push_back(
                {bundle.record.publication_date, bundle.publisher_licenses});
        });
        for (const auto& [issn, infos] : licensed) {
            if (registry.contains({issn}, links))
                continue;
            if (const auto days = detect_delayed_from_metadata(
                    infos, config.classifier.open_license_patterns,
                    config.classifier.immediate_grace_days))
                metadata_embargoes[issn] = *days;
        }
    }

    std::map<Issn, int> pmc;
    if (!args.pmc.empty())
        pmc = load_pmc_embargoes(args.pmc);

    const auto delayed = build_delayed_registry(verdicts, metadata_embargoes, pmc, titles);
    delayed.save(args.out);

    std::size_t delayed_by_cohort = 0;
    for (const auto& stats : verdicts)
        delayed_by_cohort += stats.verdict == DelayedVerdict::Delayed;
    std::cerr << "examined " << verdicts.size() << " journals: " << delayed_by_cohort
              << " cohort-delayed, " << metadata_embargoes.size() << " metadata-delayed, "
              << delayed.rows.size() << " total in " << args.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

struct ReportArgs {
    std::string classifications;
    std::string group_by;
    std::string mode = "primary";
    std::string format = "csv";
    std::string out;
};

int run_report(const ReportArgs& args) {
    std::vector<ClassificationRow> rows;
    for_each_line(args.classifications, [&rows](const std::string& line, std::size_t line_no) {
        try {
            rows.push_back(classification_row_from_json_line(line));
        } catch (const Error& e) {
            throw ParseError(std::string("bad classification line: ") + e.what(), line_no);
        }
    });

    std::vector<std::string> group_by;
    for (const auto& field : split_flag_list(args.group_by))
        group_by.push_back(field);
    // Comma-separated lists are friendlier on the command line.
    if (group_by.size() == 1 && group_by[0].find(',') != std::string::npos) {
        group_by.clear();
        std::istringstream in(args.group_by);
        std::string field;
        while (std::getline(in, field, ','))
            if (!std::string(trim_view(field)).empty())
                group_by.emplace_back(trim_view(field));
    }

    AggregationMode mode;
    if (args.mode == "primary")
        mode = AggregationMode::PrimaryLabel;
    else if (args.mode == "multi")
        mode = AggregationMode::MultiLabel;
    else
        throw ConfigError("unknown --mode '" + args.mode + "' (primary, multi)");

    const auto reports = aggregate(rows, group_by, mode);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!args.out.empty()) {
        file = open_output(args.out);
        out = &file;
    }
    if (args.format == "csv")
        emit_csv(*out, reports, group_by);
    else if (args.format == "json")
        emit_json(*out, reports);
    else
        throw ConfigError("unknown --format '" + args.format + "' (csv, json)");
    out->flush();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"oaclass: open-access classification of scholarly records from evidence "
                 "snapshots"};
    app.require_subcommand(1);
    app.footer(
        "Config file keys (flat 'key = value', '#' comments, ';'-separated lists):\n"
        "  immediate_grace_days    days a license may lag publication and still count\n"
        "                          as immediate (default 30)\n"
        "  open_license_patterns   URL patterns recognized as open licenses\n"
        "                          (default creativecommons.org/licenses/* ;\n"
        "                           creativecommons.org/publicdomain/*)\n"
        "  unlawful_host_denylist  host prefixes whose copies never count as green\n"
        "                          (default sci-hub. ; scihub. ; researchgate.net ;\n"
        "                           academia.edu)\n"
        "  precedence              all 13 class codes in primary-selection order\n"
        "  delayed_horizon_months  old-cohort boundary (default 24)\n"
        "  delayed_recent_months   recent-window length (default 12)\n"
        "  delayed_theta_old       minimum old-cohort open share (default 0.9)\n"
        "  delayed_theta_recent    maximum recent open share (default 0.5)\n"
        "  delayed_min_cohort      minimum articles per cohort (default 20)\n"
        "  rate_limit_rps          max requests per second (default 2)\n"
        "  max_retries             retries per request (default 3)\n"
        "  backoff_base_ms         base retry backoff (default 500)\n"
        "\n"
        "Environment: OACLASS_CACHE_DIR overrides the default cache directory\n"
        "(.oaclass-cache) used when harvest runs without --out.");

    // registry
    auto* registry_cmd = app.add_subcommand("registry", "validate or canonicalize registries");
    registry_cmd->require_subcommand(1);
    RegistryArgs registry_args;
    auto* validate_cmd =
        registry_cmd->add_subcommand("validate", "check registry files, print diagnostics");
    validate_cmd->add_option("--journals", registry_args.journals, "journal registry CSV");
    validate_cmd->add_option("--source", registry_args.source,
                             "journal registry source: doaj|gold_list|pmc");
    validate_cmd->add_option("--repos", registry_args.repos, "repository registry CSV");
    validate_cmd->add_option("--links", registry_args.links, "ISSN-L link table CSV");
    validate_cmd->add_option("--pmc", registry_args.pmc, "PMC embargo CSV");
    auto* build_cmd =
        registry_cmd->add_subcommand("build", "merge and write canonical registry CSVs");
    build_cmd->add_option("--journals", registry_args.journals, "journal registry CSV");
    build_cmd->add_option("--source", registry_args.source,
                          "journal registry source: doaj|gold_list|pmc");
    build_cmd->add_option("--out", registry_args.out, "canonical journal registry output");
    build_cmd->add_option("--repos", registry_args.repos, "repository registry CSV");
    build_cmd->add_option("--repos-out", registry_args.repos_out,
                          "canonical repository registry output");

    // harvest
    HarvestArgs harvest_args;
    auto* harvest_cmd = app.add_subcommand("harvest", "harvest an OAI-PMH or paged JSON endpoint");
    harvest_cmd->add_option("--endpoint", harvest_args.endpoint, "endpoint URL")->required();
    harvest_cmd->add_option("--protocol", harvest_args.protocol, "oai (default) or json");
    harvest_cmd->add_option("--out", harvest_args.out,
                            "output directory (oai) or NDJSON file (json)");
    harvest_cmd->add_option("--from", harvest_args.from, "OAI from timestamp");
    harvest_cmd->add_option("--until", harvest_args.until, "OAI until timestamp");
    harvest_cmd->add_option("--set", harvest_args.set_spec, "OAI setSpec");
    harvest_cmd->add_option("--ids", harvest_args.ids_file, "file with one DOI per line (json)");
    harvest_cmd->add_option("--config", harvest_args.config_file, "key=value config file");
    harvest_cmd->add_option("--rate", harvest_args.rate,
                            "max requests per second (default 2)");
    harvest_cmd->add_option("--retries", harvest_args.retries,
                            "max retries per request (default 3)");
    harvest_cmd->add_option("--backoff-ms", harvest_args.backoff_ms,
                            "base backoff in ms (default 500)");
    harvest_cmd->add_option("--max-pages", harvest_args.max_pages,
                            "stop after N pages (resumable)");
    harvest_cmd->add_flag("--resume", harvest_args.resume, "continue from the saved state");
    harvest_cmd->add_flag("--identify", harvest_args.identify, "run the OAI Identify verb only");

    // ingest
    IngestArgs ingest_args;
    auto* ingest_cmd =
        app.add_subcommand("ingest", "parse snapshots and assemble evidence bundles");
    ingest_cmd->add_option("--crossref", ingest_args.crossref, "Crossref-style NDJSON snapshot");
    ingest_cmd->add_option("--locations", ingest_args.locations,
                           "Unpaywall-style NDJSON snapshot");
    ingest_cmd->add_option("--oai-dir", ingest_args.oai_dirs,
                           "directory of raw OAI-PMH pages (*.xml)");
    ingest_cmd->add_option("--records", ingest_args.records,
                           "publication records NDJSON (defaults to crossref-derived)");
    ingest_cmd->add_option("--journals", ingest_args.journals, "journal registry CSV");
    ingest_cmd->add_option("--journals-source", ingest_args.journals_source,
                           "doaj|gold_list|pmc");
    ingest_cmd->add_option("--links", ingest_args.links, "ISSN-L link table CSV");
    ingest_cmd->add_option("--out", ingest_args.out, "bundle NDJSON output")->required();
    ingest_cmd->add_option("--orphans", ingest_args.orphans, "orphaned evidence CSV output");

    // classify
    ClassifyArgs classify_args;
    auto* classify_cmd = app.add_subcommand("classify", "classify evidence bundles");
    classify_cmd->add_option("--bundles", classify_args.bundles, "bundle NDJSON")->required();
    classify_cmd->add_option("--repos", classify_args.repos, "repository registry CSV");
    classify_cmd->add_option("--config", classify_args.config_file, "key=value config file");
    classify_cmd->add_option("--delayed", classify_args.delayed, "delayed-journal registry CSV");
    classify_cmd->add_option("--out", classify_args.out, "classification NDJSON output")
        ->required();
    classify_cmd->add_option("--grace-days", classify_args.grace_days,
                             "immediate grace period override");
    classify_cmd->add_option("--denylist", classify_args.denylist,
                             "';'-separated unlawful host prefixes");
    classify_cmd->add_option("--patterns", classify_args.patterns,
                             "';'-separated open license URL patterns");
    classify_cmd->add_option("--precedence", classify_args.precedence,
                             "';'-separated class codes, all 13");

    // detect-delayed
    DetectArgs detect_args;
    auto* detect_cmd =
        app.add_subcommand("detect-delayed", "build the delayed-OA journal registry");
    detect_cmd->add_option("--classifications", detect_args.classifications,
                           "classification NDJSON")
        ->required();
    detect_cmd->add_option("--journals", detect_args.journals, "full-OA journal registry CSV");
    detect_cmd->add_option("--journals-source", detect_args.journals_source,
                           "doaj|gold_list|pmc");
    detect_cmd->add_option("--links", detect_args.links, "ISSN-L link table CSV");
    detect_cmd->add_option("--pmc", detect_args.pmc, "PMC embargo CSV");
    detect_cmd->add_option("--bundles", detect_args.bundles,
                           "bundle NDJSON (enables the license-delay strategy)");
    detect_cmd->add_option("--config", detect_args.config_file, "key=value config file");
    detect_cmd->add_option("--reference-date", detect_args.reference_date,
                           "reference date YYYY-MM-DD (default: latest publication date)");
    detect_cmd->add_option("--out", detect_args.out, "delayed registry CSV output")->required();

    // report
    ReportArgs report_args;
    auto* report_cmd = app.add_subcommand("report", "aggregate classifications into OA shares");
    report_cmd->add_option("--classifications", report_args.classifications,
                           "classification NDJSON")
        ->required();
    report_cmd->add_option("--group-by", report_args.group_by,
                           "comma- or ';'-separated dimensions: year, journal, document_type, "
                           "access_mode");
    report_cmd->add_option("--mode", report_args.mode, "primary (default) or multi");
    report_cmd->add_option("--format", report_args.format, "csv (default) or json");
    report_cmd->add_option("--out", report_args.out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (validate_cmd->parsed())
            return run_registry_validate(registry_args);
        if (build_cmd->parsed())
            return run_registry_build(registry_args);
        if (harvest_cmd->parsed())
            return run_harvest(harvest_args);
        if (ingest_cmd->parsed())
            return run_ingest(ingest_args);
        if (classify_cmd->parsed())
            return run_classify(classify_args);
        if (detect_cmd->parsed())
            return run_detect_delayed(detect_args);
        if (report_cmd->parsed())
            return run_report(report_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
