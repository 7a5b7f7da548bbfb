#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oaclass/errors.hpp"
#include "oaclass/evidence.hpp"
#include "oaclass/ingest.hpp"
#include "oaclass/oai.hpp"

#include "support/fixture_servers.hpp"
#include "support/temp_dir.hpp"

using namespace oaclass;
using oaclass::testing::TempDir;

TEST_CASE("crossref snapshot: field mapping, partial dates, skip-and-log") {
    TempDir dir;
    const std::string path = dir.file(
        "crossref.ndjson",
        R"({"DOI":"10.7717/PEERJ.4375","ISSN":["2167-8359"],"issued":{"date-parts":[[2018,2]]},"license":[{"URL":"https://creativecommons.org/licenses/by/4.0/","delay-in-days":0}],"title":["The state of OA"],"container-title":["PeerJ"],"type":"journal-article","author":[{"family":"Piwowar","given":"Heather"}]})"
        "\n"
        "not json\n"
        R"({"DOI":"10.1002/asi.22856","ISSN":["1532-2882","1532-2890"],"issued":{"date-parts":[[2012,11,5]]},"published-online":{"date-parts":[[2012,10,1]]}})"
        "\n"
        R"({"missing":"doi"})"
        "\n");

    ParseReport report;
    const auto works = parse_crossref_snapshot(path, report);

    // Loss accounting: yielded + errors == non-empty lines.
    CHECK(report.lines_total == 4);
    CHECK(report.yielded == 2);
    CHECK(report.errors.size() == 2);
    CHECK(report.yielded + report.errors.size() == report.lines_total);
    CHECK(report.errors[0].line == 2);

    REQUIRE(works.size() == 2);
    CHECK(works[0].doi.value() == "10.7717/peerj.4375");
    REQUIRE(works[0].dates.size() == 1);
    CHECK(works[0].dates[0] == PartialDate::of_month(2018, 2));
    REQUIRE(works[0].licenses.size() == 1);
    CHECK(works[0].licenses[0].delay_days == 0);
    CHECK(works[0].licenses[0].content_version == ContentVersion::Unspecified);
    CHECK(works[0].title == "The state of OA");
    CHECK(works[0].authors == std::vector<std::string>{"Piwowar, Heather"});

    CHECK(works[1].dates.size() == 2);
    CHECK(works[1].issns.size() == 2);
}

TEST_CASE("crossref snapshot: bad ISSN is a warning, not a lost line") {
    TempDir dir;
    const std::string path = dir.file(
        "crossref.ndjson",
        R"({"DOI":"10.1/x1","ISSN":["1234-5678"],"issued":{"date-parts":[[2019]]}})" "\n");
    ParseReport report;
    const auto works = parse_crossref_snapshot(path, report);
    REQUIRE(works.size() == 1);
    CHECK(works[0].issns.empty());
    CHECK(report.warnings.size() == 1);
    CHECK(report.errors.empty());
}

TEST_CASE("location snapshot: host kinds, versions, license codes") {
    TempDir dir;
    const std::string path = dir.file(
        "unpaywall.ndjson",
        R"({"doi":"10.1/a","oa_locations":[{"url":"https://arxiv.org/abs/1","host_type":"repository","version":"acceptedVersion","updated":"2019-05-01T12:00:00Z","license":"cc-by","endpoint_id":"arxiv"},{"url":"https://journal.example.com/1","host_type":"publisher","version":"publishedVersion"}]})"
        "\n"
        R"({"doi":"10.1/b"})"
        "\n"
        R"({"doi":"10.1/c","oa_locations":[{"url":"https://x.org/1","host_type":"weird"}]})"
        "\n");

    ParseReport report;
    const auto records = parse_location_snapshot(path, report);
    CHECK(report.yielded == 3);
    REQUIRE(records.size() == 3);

    REQUIRE(records[0].locations.size() == 2);
    const auto& repo = records[0].locations[0];
    CHECK(repo.host_kind == LocationHostKind::Repository);
    CHECK(repo.declared_version == DeclaredVersion::AcceptedVersion);
    CHECK(repo.deposit_timestamp == PartialDate::of_day(2019, 5, 1));
    CHECK(repo.repo_hint == "arxiv");
    REQUIRE(repo.license.has_value());
    CHECK(repo.license->url == "https://creativecommons.org/licenses/by/4.0/");

    const auto& publisher = records[0].locations[1];
    CHECK(publisher.host_kind == LocationHostKind::PublisherSite);
    CHECK(!publisher.repo_hint.has_value());

    // Absent oa_locations is a valid non-OA observation.
    CHECK(records[1].locations.empty());

    // Unknown host_type drops the location with a warning, not the line.
    CHECK(records[2].locations.empty());
    CHECK(!report.warnings.empty());
}

TEST_CASE("records derive from crossref works with earliest date and type filter") {
    TempDir dir;
    const std::string path = dir.file(
        "crossref.ndjson",
        R"({"DOI":"10.1/a","ISSN":["2041-1723"],"issued":{"date-parts":[[2018,3,1]]},"published-online":{"date-parts":[[2018,2]]},"title":["Work A"],"container-title":["Journal A"],"type":"journal-article"})"
        "\n"
        R"({"DOI":"10.1/b","issued":{"date-parts":[[2019]]},"title":["Data B"],"type":"dataset"})"
        "\n");
    ParseReport report;
    const auto works = parse_crossref_snapshot(path, report);
    const auto records = records_from_crossref(works, report);

    REQUIRE(records.size() == 1);
    CHECK(records[0].doi->value() == "10.1/a");
    // print 2018-03-01 vs online 2018-02 -> earliest at month precision.
    CHECK(records[0].publication_date == PartialDate::of_month(2018, 2));
    CHECK(records[0].document_type == DocumentType::Article);
    CHECK(report.warnings.size() == 1); // the dataset
}

TEST_CASE("assemble: doi join, fallback join, orphans, one bundle per record") {
    PublicationRecord with_doi;
    with_doi.doi = normalize_doi("10.1/a");
    with_doi.issns = {normalize_issn("2041-1723")};
    with_doi.journal_title = "Journal A";
    with_doi.publication_title = "Work A";
    with_doi.publication_date = PartialDate::of_day(2019, 3, 1);

    PublicationRecord doiless;
    doiless.issns = {normalize_issn("0378-5955")};
    doiless.journal_title = "Hearing Research";
    doiless.publication_title = "A Fallback-Joined Study";
    doiless.publication_date = PartialDate::of_day(2019, 6, 1);

    PublicationRecord bare;
    bare.doi = normalize_doi("10.1/nothing");
    bare.publication_title = "No Evidence At All";
    bare.publication_date = PartialDate::of_year(2018);

    EvidenceIndex index;
    CrossrefWork work_a{.doi = normalize_doi("10.1/a")};
    work_a.dates = {PartialDate::of_day(2019, 3, 1)};
    work_a.licenses = {{"https://creativecommons.org/licenses/by/4.0/", std::nullopt, 0,
                        ContentVersion::VOR}};
    index.add_crossref(work_a, "crossref:snap.ndjson");

    CrossrefWork work_b{.doi = normalize_doi("10.2/fallback")};
    work_b.issns = {normalize_issn("0378-5955")};
    work_b.title = "A   FALLBACK-JOINED Study";
    work_b.dates = {PartialDate::of_day(2019, 6, 2)};
    work_b.licenses = {{"https://creativecommons.org/licenses/by-nc/4.0/", std::nullopt,
                        std::nullopt, ContentVersion::Unspecified}};
    index.add_crossref(work_b, "crossref:snap.ndjson");

    CrossrefWork orphan{.doi = normalize_doi("10.9/orphan")};
    index.add_crossref(orphan, "crossref:snap.ndjson");

    LocationRecord locations{.doi = normalize_doi("10.1/a")};
    locations.locations.push_back(
        {.url = "https://arxiv.org/abs/1", .host_kind = LocationHostKind::Repository});
    index.add_locations(locations, "unpaywall:snap.ndjson");

    const IssnLinkTable links;
    const auto result =
        assemble_bundles({with_doi, doiless, bare}, index, nullptr, links);

    REQUIRE(result.bundles.size() == 3);

    const auto& a = result.bundles[0];
    CHECK(a.match_method == MatchMethod::Doi);
    CHECK(a.publisher_licenses.size() == 1);
    CHECK(a.locations.size() == 1);
    CHECK(a.source_tags ==
          std::vector<std::string>{"crossref:snap.ndjson", "unpaywall:snap.ndjson"});

    const auto& b = result.bundles[1];
    CHECK(b.match_method == MatchMethod::Fallback);
    CHECK(b.publisher_licenses.size() == 1);

    const auto& c = result.bundles[2];
    CHECK(c.match_method == MatchMethod::Unmatched);
    CHECK(c.publisher_licenses.empty());
    CHECK(c.locations.empty());

    REQUIRE(result.orphans.size() == 1);
    CHECK(result.orphans[0].evidence_key == "10.9/orphan");
    CHECK(result.orphans[0].reason == "no matching record");

    std::ostringstream csv;
    write_orphan_csv(csv, result.orphans);
    CHECK(csv.str() == "evidence_key,source_tag,reason\n"
                       "10.9/orphan,crossref:snap.ndjson,no matching record\n");
}

TEST_CASE("assemble: registry match respects the record year and issn links") {
    PublicationRecord record;
    record.doi = normalize_doi("10.1/x");
    record.issns = {normalize_issn("2090-424X")};
    record.publication_title = "Linked";
    record.publication_date = PartialDate::of_day(2018, 1, 1);

    JournalRegistry registry;
    registry.add({.issns = {normalize_issn("2041-1723")},
                  .issn_l = normalize_issn("2041-1723"),
                  .title = "Linked Journal",
                  .oa_since_year = 2015,
                  .source = RegistrySource::DoajLike});
    IssnLinkTable links;
    links.add(normalize_issn("2090-424X"), normalize_issn("2041-1723"));

    EvidenceIndex index;
    const auto result = assemble_bundles({record}, index, &registry, links);
    REQUIRE(result.bundles.size() == 1);
    REQUIRE(result.bundles[0].full_oa_match.has_value());
    CHECK(result.bundles[0].full_oa_match->matched_via == MatchVia::IssnL);
}

TEST_CASE("assemble: delay_days disagreement is diagnosed, not fatal") {
    PublicationRecord record;
    record.doi = normalize_doi("10.1/d");
    record.publication_title = "Delayed";
    record.publication_date = PartialDate::of_day(2019, 3, 1);

    EvidenceIndex index;
    CrossrefWork work{.doi = normalize_doi("10.1/d")};
    work.licenses = {{"https://creativecommons.org/licenses/by/4.0/",
                      PartialDate::of_day(2019, 9, 1), 10, ContentVersion::VOR}};
    index.add_crossref(work, "crossref:x");

    const IssnLinkTable links;
    const auto result = assemble_bundles({record}, index, nullptr, links);
    REQUIRE(result.bundles.size() == 1);
    REQUIRE(result.bundles[0].diagnostics.size() == 1);
    // The start/publication gap is 184 days, the statement says 10.
    CHECK(result.bundles[0].diagnostics[0].find("184") != std::string::npos);
}

TEST_CASE("bundle ndjson round-trip is stable") {
    EvidenceBundle bundle;
    bundle.record.doi = normalize_doi("10.1/rt");
    bundle.record.issns = {normalize_issn("2041-1723")};
    bundle.record.journal_title = "Round Trip";
    bundle.record.publication_title = "Work";
    bundle.record.publication_date = PartialDate::of_month(2019, 2);
    bundle.publisher_licenses = {{"https://creativecommons.org/licenses/by/4.0/",
                                  PartialDate::of_day(2019, 2, 1), 0, ContentVersion::VOR}};
    AccessLocation location{.url = "https://arxiv.org/abs/2", .host_kind = LocationHostKind::Repository};
    location.deposit_timestamp = PartialDate::of_day(2019, 1, 15);
    location.declared_version = DeclaredVersion::SubmittedVersion;
    bundle.locations.push_back(location);
    bundle.full_oa_match = FullOAMatch{{.issns = {normalize_issn("2041-1723")},
                                        .issn_l = normalize_issn("2041-1723"),
                                        .title = "Round Trip",
                                        .oa_since_year = 2015,
                                        .source = RegistrySource::DoajLike},
                                       MatchVia::Direct};
    bundle.source_tags = {"crossref:x", "unpaywall:y"};
    bundle.match_method = MatchMethod::Doi;

    const std::string line = to_json_line(bundle);
    CHECK(line.find('\n') == std::string::npos);
    const EvidenceBundle parsed = bundle_from_json_line(line);
    CHECK(parsed == bundle);
    CHECK(to_json_line(parsed) == line);

    CHECK_THROWS_AS(bundle_from_json_line("{"), ParseError);
    CHECK_THROWS_AS(bundle_from_json_line("{}"), ParseError);
}

TEST_CASE("oai: list records parsing") {
    using oaclass::testing::OaiFixtureRecord;
    std::vector<OaiFixtureRecord> records(2);
    records[0].identifier = "oai:arxiv.org:1811.00001";
    records[0].datestamp = "2018-10-02";
    records[0].titles = {"An arXiv Preprint"};
    records[0].identifiers = {"http://arxiv.org/abs/1811.00001", "doi:10.1000/gamma.2"};
    records[0].dates = {"2018-10-01"};
    records[0].rights = {"http://creativecommons.org/licenses/by/4.0"};
    records[1].identifier = "oai:repo:deleted-1";
    records[1].datestamp = "2019-01-01";
    records[1].deleted = true;

    const std::string xml = oaclass::testing::make_oai_list_records(records, "token-2");
    const OaiPage page = parse_oai_dc(xml);

    REQUIRE(page.records.size() == 2);
    CHECK(page.resumption_token == "token-2");
    CHECK(page.records[0].identifier == "oai:arxiv.org:1811.00001");
    CHECK(page.records[0].rights ==
          std::vector<std::string>{"http://creativecommons.org/licenses/by/4.0"});
    CHECK(page.records[1].deleted);
    CHECK(page.records[1].titles.empty());

    SUBCASE("deleted records carry no evidence") {
        CHECK(!oai_to_evidence(page.records[1]).has_value());
    }
    SUBCASE("live records map to a repository location with license and date") {
        const auto evidence = oai_to_evidence(page.records[0]);
        REQUIRE(evidence.has_value());
        REQUIRE(evidence->doi.has_value());
        CHECK(evidence->doi->value() == "10.1000/gamma.2");
        CHECK(evidence->location.url == "http://arxiv.org/abs/1811.00001");
        CHECK(evidence->location.deposit_timestamp == PartialDate::of_day(2018, 10, 1));
        REQUIRE(evidence->location.license.has_value());
        CHECK(evidence->location.license->url ==
              "http://creativecommons.org/licenses/by/4.0");
    }
    SUBCASE("record json lines round-trip") {
        const std::string line = to_json_line(page.records[0]);
        CHECK(oai_record_from_json_line(line) == page.records[0]);
    }
}

TEST_CASE("oai: error handling") {
    CHECK_THROWS_AS(parse_oai_dc("<unclosed"), XmlError);
    CHECK_THROWS_AS(parse_oai_dc("not xml at all"), XmlError);

    // A record without the mandatory header identifier is skipped and
    // reported; the rest of the page survives.
    const std::string xml =
        "<OAI-PMH><ListRecords>"
        "<record><header><datestamp>2019-01-01</datestamp></header></record>"
        "<record><header><identifier>oai:ok:1</identifier>"
        "<datestamp>2019-01-02</datestamp></header><metadata>"
        "<oai_dc:dc xmlns:dc=\"http://purl.org/dc/elements/1.1/\">"
        "<dc:title>Survivor &amp; Friends</dc:title></oai_dc:dc>"
        "</metadata></record>"
        "</ListRecords></OAI-PMH>";
    const OaiPage page = parse_oai_dc(xml);
    CHECK(page.record_errors.size() == 1);
    REQUIRE(page.records.size() == 1);
    CHECK(page.records[0].identifier == "oai:ok:1");
    CHECK(page.records[0].titles == std::vector<std::string>{"Survivor & Friends"});

    const OaiPage error_page =
        parse_oai_dc(oaclass::testing::make_oai_error("noRecordsMatch", "nothing here"));
    CHECK(error_page.error_code == "noRecordsMatch");
    CHECK(error_page.records.empty());
}
