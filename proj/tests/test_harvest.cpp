#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <fstream>
#include <set>

#include "oaclass/errors.hpp"
#include "oaclass/harvest.hpp"
#include "oaclass/oai.hpp"

#include "support/fixture_servers.hpp"
#include "support/temp_dir.hpp"

using namespace oaclass;
using namespace oaclass::testing;

namespace {

std::vector<std::vector<OaiFixtureRecord>> three_pages() {
    std::vector<std::vector<OaiFixtureRecord>> pages(3);
    int n = 0;
    for (auto& page : pages)
        for (int i = 0; i < 2; ++i) {
            OaiFixtureRecord record;
            record.identifier = "oai:fixture:" + std::to_string(++n);
            record.datestamp = "2019-01-0" + std::to_string(n);
            record.titles = {"Record " + std::to_string(n)};
            record.identifiers = {"http://repo.example.org/item/" + std::to_string(n)};
            record.dates = {"2019-01-01"};
            page.push_back(record);
        }
    return pages;
}

std::multiset<std::string> harvested_identifiers(const std::string& records_path) {
    std::multiset<std::string> identifiers;
    std::ifstream in(records_path);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty())
            identifiers.insert(oai_record_from_json_line(line).identifier);
    return identifiers;
}

HarvestJob job_for(const std::string& endpoint) {
    HarvestJob job;
    job.endpoint_url = endpoint;
    job.politeness.max_requests_per_second = 200.0; // fast in tests
    job.politeness.max_retries = 3;
    job.politeness.backoff_base_ms = 10;
    return job;
}

} // namespace

TEST_CASE("oai harvest: token chain consumed with exactly one request per page") {
    OaiChainFixture fixture(three_pages());
    TempDir dir;

    const auto result = harvest_oai(job_for(fixture.endpoint()), dir.sub("out"));
    CHECK(result.requests_made == 3);
    CHECK(fixture.requests() == 3);
    CHECK(result.records_written == 6);
    CHECK(result.state.complete);
    CHECK(harvested_identifiers(result.records_path).size() == 6);

    // Raw pages are kept for audit, one file per request.
    CHECK(std::filesystem::exists(std::filesystem::path(result.pages_dir) / "page-0001.xml"));
    CHECK(std::filesystem::exists(std::filesystem::path(result.pages_dir) / "page-0003.xml"));
}

TEST_CASE("oai harvest: noRecordsMatch is an empty successful snapshot") {
    OaiChainFixture fixture({});
    TempDir dir;

    const auto result = harvest_oai(job_for(fixture.endpoint()), dir.sub("out"));
    CHECK(result.records_written == 0);
    CHECK(result.state.complete);
    CHECK(harvested_identifiers(result.records_path).empty());
}

TEST_CASE("oai harvest: other protocol errors raise") {
    OaiChainFixture fixture(three_pages());
    TempDir dir;

    auto job = job_for(fixture.endpoint());
    job.resume_state = "bogus-token"; // the fixture rejects unknown tokens
    CHECK_THROWS_AS(harvest_oai(job, dir.sub("out")), ProtocolError);
}

TEST_CASE("oai harvest: 503 with Retry-After is honored exactly once") {
    OaiFixtureRecord record;
    record.identifier = "oai:fixture:only";
    record.datestamp = "2019-01-01";
    Oai503Fixture fixture(1, 2, {record});
    TempDir dir;

    const auto started = std::chrono::steady_clock::now();
    const auto result = harvest_oai(job_for(fixture.endpoint()), dir.sub("out"));
    const auto elapsed = std::chrono::steady_clock::now() - started;

    CHECK(fixture.requests() == 2); // one failure, one retry
    CHECK(result.records_written == 1);
    CHECK(elapsed >= std::chrono::seconds(2));
}

TEST_CASE("oai harvest: retries exhaust into TransportError") {
    Oai503Fixture fixture(100, 0, {});
    TempDir dir;

    auto job = job_for(fixture.endpoint());
    job.politeness.max_retries = 2;
    CHECK_THROWS_AS(harvest_oai(job, dir.sub("out")), TransportError);
    CHECK(fixture.requests() == 3); // initial try + 2 retries
}

TEST_CASE("oai harvest: interrupted run resumes to the same record multiset") {
    TempDir dir;
    std::multiset<std::string> uninterrupted;
    {
        OaiChainFixture fixture(three_pages());
        const auto full = harvest_oai(job_for(fixture.endpoint()), dir.sub("full"));
        uninterrupted = harvested_identifiers(full.records_path);
    }

    OaiChainFixture fixture(three_pages());
    const std::string out = dir.sub("resumed");
    HarvestOptions one_page{.max_pages_per_run = 1};

    auto first = harvest_oai(job_for(fixture.endpoint()), out, one_page);
    CHECK(!first.state.complete);
    CHECK(first.state.resumption_token == "t1");
    CHECK(first.records_written == 2);

    // Resume twice from the on-disk state; no token is passed explicitly.
    auto second = harvest_oai(job_for(fixture.endpoint()), out, one_page);
    CHECK(!second.state.complete);
    auto third = harvest_oai(job_for(fixture.endpoint()), out, one_page);
    CHECK(third.state.complete);

    CHECK(harvested_identifiers(third.records_path) == uninterrupted);
    CHECK(fixture.requests() == 3);
}

TEST_CASE("oai identify") {
    OaiChainFixture fixture(three_pages());
    const auto identity = identify_oai(fixture.endpoint(), Politeness{200.0, 1, 10});
    CHECK(identity.repository_name == "Fixture Repository");
    CHECK(identity.protocol_version == "2.0");
}

TEST_CASE("paged json: cursor pagination") {
    PagedJsonFixture fixture({R"({"id":1})", R"({"id":2})", R"({"id":3})"}, 2);
    TempDir dir;

    auto job = job_for(fixture.endpoint());
    job.protocol = HarvestProtocol::PagedJson;
    const auto result = fetch_paged_json(job, (dir.path / "items.ndjson").string());

    CHECK(result.items_written == 3);
    CHECK(result.requests_made == 2); // page of 2, then page of 1 without cursor
    CHECK(fixture.requests() == 2);

    std::ifstream in(dir.path / "items.ndjson");
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line))
        if (!line.empty())
            ++lines;
    CHECK(lines == 3);
}

TEST_CASE("paged json: id list with a logged miss") {
    PagedJsonFixture fixture({}, 2);
    fixture.add_item_by_id("10.1/a", R"({"doi":"10.1/a"})");
    fixture.add_item_by_id("10.1/b", R"({"doi":"10.1/b"})");
    TempDir dir;

    auto job = job_for(fixture.endpoint());
    job.protocol = HarvestProtocol::PagedJson;
    const std::vector<Doi> ids = {normalize_doi("10.1/a"), normalize_doi("10.1/b"),
                                  normalize_doi("10.1/missing")};
    const auto result = fetch_paged_json(job, (dir.path / "items.ndjson").string(), ids);

    CHECK(result.items_written == 2);
    REQUIRE(result.misses.size() == 1);
    CHECK(result.misses[0].find("10.1/missing") != std::string::npos);
    CHECK(result.misses[0].find("404") != std::string::npos);
}

TEST_CASE("paged json: 401/403 raise AuthError") {
    FixtureServer server;
    server.server().Get("/works", [](const httplib::Request&, httplib::Response& res) {
        res.status = 401;
        res.set_content("{\"error\":\"unauthorized\"}", "application/json");
    });
    server.start();
    TempDir dir;

    auto job = job_for(server.url("/works"));
    job.protocol = HarvestProtocol::PagedJson;
    CHECK_THROWS_AS(fetch_paged_json(job, (dir.path / "x.ndjson").string()), AuthError);
}

TEST_CASE("rate limiter: 5 requests at 2 rps take at least 2 seconds") {
    RateLimiter limiter(2.0);
    const auto started = std::chrono::steady_clock::now();
    std::vector<std::chrono::steady_clock::time_point> stamps;
    for (int i = 0; i < 5; ++i)
        stamps.push_back(limiter.acquire());
    const auto elapsed = std::chrono::steady_clock::now() - started;
    CHECK(elapsed >= std::chrono::milliseconds(2000));

    // No 1-second half-open window holds more than 2 request starts.
    for (const auto& t : stamps) {
        int in_window = 0;
        for (const auto& u : stamps)
            if (u > t - std::chrono::seconds(1) && u <= t)
                ++in_window;
        CHECK(in_window <= 2);
    }
}

TEST_CASE("rate limiter rejects nonpositive rates") {
    CHECK_THROWS_AS(RateLimiter(0.0), ConfigError);
    CHECK_THROWS_AS(RateLimiter(-1.0), ConfigError);
}
