#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oaclass/errors.hpp"
#include "oaclass/report.hpp"

#include "support/checks.hpp"

using namespace oaclass;

namespace {

ClassificationRow row_with_primary(const std::string& code, int year,
                                   const std::string& journal = "j1") {
    const auto cls = OAClass::from_code(code);
    REQUIRE(cls.has_value());
    ClassificationRow row;
    row.journal = journal;
    row.publication_date = PartialDate::of_year(year);
    row.classification = OAClassification::create(
        {*cls}, *cls, cls->is_non_oa() ? AccessMode::Closed : AccessMode::Gratis, {});
    return row;
}

} // namespace

TEST_CASE("aggregate: primary-label shares") {
    std::vector<ClassificationRow> rows;
    for (int i = 0; i < 4; ++i)
        rows.push_back(row_with_primary("gold_full", 2019));
    for (int i = 0; i < 3; ++i)
        rows.push_back(row_with_primary("green_postprint_institutional", 2019));
    for (int i = 0; i < 3; ++i)
        rows.push_back(row_with_primary("non_oa", 2019));

    const auto reports = aggregate(rows, {}, AggregationMode::PrimaryLabel);
    REQUIRE(reports.size() == 1);
    const auto& report = reports[0];
    CHECK(report.total == 10);
    CHECK(report.counts.at("gold_full") == 4);
    CHECK(report.counts.at("green_postprint_institutional") == 3);
    CHECK(report.counts.at("non_oa") == 3);
    CHECK(report.shares.at("gold_full") == doctest::Approx(0.4));
    CHECK(report.shares.at("green_postprint_institutional") == doctest::Approx(0.3));
    CHECK(report.shares.at("non_oa") == doctest::Approx(0.3));
    // Every class code is present, zeros included.
    CHECK(report.counts.size() == all_oa_classes().size());
    CHECK(report.counts.at("gold_hybrid") == 0);
}

TEST_CASE("aggregate: empty input, multi-label mode, unknown fields") {
    CHECK(aggregate({}, {"year"}, AggregationMode::PrimaryLabel).empty());
    CHECK_THROWS_AS(aggregate({}, {"institution"}, AggregationMode::PrimaryLabel),
                    UnknownFieldError);

    ClassificationRow multi;
    multi.publication_date = PartialDate::of_year(2020);
    const auto hybrid = OAClass::gold(GoldKind::HybridOA);
    const auto preprint = OAClass::green(GreenTiming::Preprint, GreenHost::Disciplinary);
    multi.classification =
        OAClassification::create({hybrid, preprint}, hybrid, AccessMode::Libre, {});

    const auto reports = aggregate({multi}, {}, AggregationMode::MultiLabel);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].total == 1);
    CHECK(reports[0].counts.at("gold_hybrid") == 1);
    CHECK(reports[0].counts.at("green_preprint_disciplinary") == 1);
}

TEST_CASE("aggregate: groups sort deterministically by key") {
    std::vector<ClassificationRow> rows;
    rows.push_back(row_with_primary("gold_full", 2020, "beta"));
    rows.push_back(row_with_primary("gold_full", 2018, "alpha"));
    rows.push_back(row_with_primary("gold_full", 2018, "beta"));

    const auto reports = aggregate(rows, {"year", "journal"}, AggregationMode::PrimaryLabel);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].group_key ==
          std::vector<std::pair<std::string, std::string>>{{"year", "2018"},
                                                           {"journal", "alpha"}});
    CHECK(reports[1].group_key[1].second == "beta");
    CHECK(reports[2].group_key[0].second == "2020");
}

TEST_CASE("emit: csv formatting, zero rows, byte stability") {
    std::vector<ClassificationRow> rows;
    rows.push_back(row_with_primary("gold_full", 2019));
    rows.push_back(row_with_primary("gold_full", 2019));
    rows.push_back(row_with_primary("non_oa", 2019));

    const auto reports = aggregate(rows, {"year"}, AggregationMode::PrimaryLabel);

    std::ostringstream a, b;
    emit_csv(a, reports, {"year"});
    emit_csv(b, reports, {"year"});
    CHECK(a.str() == b.str());

    const std::string csv = a.str();
    CHECK(csv.starts_with("year,class,count,share\n"));
    // 1/3 renders to six decimals.
    CHECK(csv.find("2019,non_oa,1,0.333333\n") != std::string::npos);
    CHECK(csv.find("2019,gold_full,2,0.666667\n") != std::string::npos);
    // Zero-count classes are present.
    CHECK(csv.find("2019,gold_delayed,0,0.000000\n") != std::string::npos);
    // 13 class rows + header.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 14);

    std::ostringstream json_out;
    emit_json(json_out, reports);
    CHECK(json_out.str().find("\"total\": 3") != std::string::npos);
}

TEST_CASE("classification row ndjson round-trip") {
    ClassificationRow row;
    row.doi = "10.1000/alpha.1";
    row.journal = "2041-1723";
    row.journal_title = "Nature Communications";
    row.publication_date = PartialDate::of_day(2019, 3, 1);
    row.document_type = DocumentType::Article;
    const auto full = OAClass::gold(GoldKind::FullOA);
    const auto preprint = OAClass::green(GreenTiming::Preprint, GreenHost::Disciplinary);
    row.classification = OAClassification::create({full, preprint}, full, AccessMode::Libre,
                                                  {"registry:2041-1723", "location:0"});
    row.publisher_open_evidence = true;

    const std::string line = to_json_line(row);
    const ClassificationRow parsed = classification_row_from_json_line(line);
    CHECK(parsed == row);
    CHECK(to_json_line(parsed) == line);

    CHECK_THROWS_AS(classification_row_from_json_line("{}"), ParseError);
    CHECK_THROWS_AS(classification_row_from_json_line("nope"), ParseError);
}

TEST_CASE("aggregation properties: additivity, order-insensitivity, share sums") {
    const auto outcome = oaclass::testing::check_aggregation(2000, 777);
    INFO(outcome.detail);
    CHECK(outcome.pass);
}
