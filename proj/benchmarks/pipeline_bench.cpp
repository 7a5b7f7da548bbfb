#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "oaclass/classifier.hpp"
#include "oaclass/issn.hpp"
#include "oaclass/report.hpp"

#include "support/checks.hpp"

using namespace oaclass;

namespace {

void BM_NormalizeIssn(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(normalize_issn("2041-1723"));
        benchmark::DoNotOptimize(normalize_issn("0378 5955"));
    }
}
BENCHMARK(BM_NormalizeIssn);

void BM_MatchLicense(benchmark::State& state) {
    const auto patterns = ClassifierConfig::default_open_license_patterns();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            match_license("https://creativecommons.org/licenses/by-nc-nd/3.0/", patterns));
        benchmark::DoNotOptimize(
            match_license("https://www.elsevier.com/tdm/userlicense/1.0/", patterns));
    }
}
BENCHMARK(BM_MatchLicense);

void BM_ClassifyBundle(benchmark::State& state) {
    oaclass::testing::BundleGenerator gen(42);
    const RepositoryRegistry repositories = gen.fx.repositories();
    ClassifierConfig config;

    std::vector<EvidenceBundle> bundles;
    for (int i = 0; i < 256; ++i)
        bundles.push_back(gen.random_bundle());

    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(bundles[i % bundles.size()], repositories, config));
        ++i;
    }
}
BENCHMARK(BM_ClassifyBundle);

void BM_ClassifyHost(benchmark::State& state) {
    RepositoryRegistry registry;
    for (int i = 0; i < 512; ++i)
        registry.add({"repo-" + std::to_string(i),
                      {"repo" + std::to_string(i) + ".example.org"},
                      RepositoryKind::Institutional});
    registry.add({"arxiv", {"arxiv.org"}, RepositoryKind::Disciplinary});

    for (auto _ : state) {
        benchmark::DoNotOptimize(registry.classify_host("https://arxiv.org/abs/1901.00001"));
        benchmark::DoNotOptimize(registry.classify_host("https://unknown.example.net/x"));
    }
}
BENCHMARK(BM_ClassifyHost);

void BM_Aggregate(benchmark::State& state) {
    const auto rows =
        oaclass::testing::random_classifications(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            aggregate(rows, {"year", "journal"}, AggregationMode::PrimaryLabel));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Aggregate)->Arg(1000)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
