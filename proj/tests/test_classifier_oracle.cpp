#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/checks.hpp"

// The classifier against an independently written brute-force evaluation of
// the decision table, across the full enumerated bundle grid (license and
// location variants, registry regimes and delayed-set regimes).
TEST_CASE("decision-table oracle equivalence over the enumerated grid") {
    const auto outcome = oaclass::testing::check_oracle_equivalence();
    INFO(outcome.detail);
    CHECK(outcome.pass);
}
