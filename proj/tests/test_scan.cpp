#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "benford/scan.hpp"
#include "oracles.hpp"

using namespace benford;

namespace {

FrequencyVector fv(std::initializer_list<double> counts) {
    return FrequencyVector::from_counts(std::vector<double>(counts));
}

const SiteScore& score_of(const ScanResult& r, const std::string& site) {
    for (const SiteScore& s : r.per_site_scores)
        if (s.site == site) return s;
    REQUIRE(false);
    return r.per_site_scores.front();
}

}  // namespace

TEST_SUITE("scan") {

TEST_CASE("leave-one-out on the worked 3-site example") {
    // counts (1,2,3) -> ids f1,f2,f3; canonical order f3,f2,f1
    const ScanResult r = leave_one_out_scan(fv({1, 2, 3}), ScanConfig{});
    CHECK(r.baseline_lambda == doctest::Approx(1.6374887941313968).epsilon(1e-12));
    CHECK_FALSE(r.baseline_degenerate);
    CHECK(r.computations_performed == 4);
    REQUIRE(r.per_site_scores.size() == 3);

    // Leave-one-out lambdas via the cofactor oracle (descending arrangements).
    const double without_f1 = oracle::cofactor_lambda({3, 2});
    const double without_f2 = oracle::cofactor_lambda({3, 1});
    const double without_f3 = oracle::cofactor_lambda({2, 1});
    CHECK(without_f1 == doctest::Approx(2.1884248031296399).epsilon(1e-12));
    CHECK(without_f2 == doctest::Approx(1.6068493982267994).epsilon(1e-12));
    CHECK(without_f3 == doctest::Approx(1.8945314706785804).epsilon(1e-12));

    CHECK(score_of(r, "f1").delta_lambda ==
          doctest::Approx(r.baseline_lambda - without_f1).epsilon(1e-12));
    CHECK(score_of(r, "f2").delta_lambda ==
          doctest::Approx(r.baseline_lambda - without_f2).epsilon(1e-12));
    CHECK(score_of(r, "f3").delta_lambda ==
          doctest::Approx(r.baseline_lambda - without_f3).epsilon(1e-12));

    // |delta| ranking: f1 (0.551), f3 (0.257), f2 (0.031)
    CHECK(r.per_site_scores[0].site == "f1");
    CHECK(r.per_site_scores[1].site == "f3");
    CHECK(r.per_site_scores[2].site == "f2");

    // Best lambda in the space {baseline, single removals} is without f1.
    CHECK(r.max_lambda_subset.removed_sites == std::vector<std::string>{"f1"});
    CHECK(r.max_lambda_subset.ordering == std::vector<std::string>{"f3", "f2"});
    CHECK(r.max_lambda_subset.lambda == doctest::Approx(without_f1).epsilon(1e-12));
}

TEST_CASE("all-equal input flags every site") {
    const ScanResult r = leave_one_out_scan(fv({4, 4, 4, 4}), ScanConfig{});
    CHECK(r.baseline_degenerate);
    CHECK(r.baseline_lambda == std::numeric_limits<double>::infinity());
    for (const SiteScore& s : r.per_site_scores) {
        CHECK(s.degenerate);
        CHECK(std::isnan(s.delta_lambda));
    }
    CHECK(r.max_lambda_subset.degenerate);
    // ranks still a permutation of 1..n, by site id
    CHECK(r.per_site_scores[0].rank == 1);
    CHECK(r.per_site_scores[3].rank == 4);
}

TEST_CASE("a degenerate sub-problem is flagged, not fatal") {
    // Removing the 3-count site leaves (5,5), a singular 2x2.
    const ScanResult r = leave_one_out_scan(
        FrequencyVector({{"a", 5.0}, {"b", 5.0}, {"c", 3.0}}), ScanConfig{});
    CHECK_FALSE(r.baseline_degenerate);
    CHECK(score_of(r, "c").degenerate);
    CHECK_FALSE(score_of(r, "a").degenerate);
    CHECK_FALSE(score_of(r, "b").degenerate);
    // degenerate entries rank last
    CHECK(score_of(r, "c").rank == 3);
}

TEST_CASE("3-site exhaustive orderings tie back to the canonical one") {
    ScanConfig config;
    config.ordering_mode = OrderingMode::exhaustive_permutations;
    const ScanResult r = leave_one_out_scan(fv({1, 2, 3}), config);
    // 3! orderings of the full set + 3 removals x 2! orderings
    CHECK(r.computations_performed == 12);
    // All orderings of a pair give the same |det|, and the best subset is
    // still "remove f1"; ties resolve to the canonical arrangement.
    CHECK(r.max_lambda_subset.removed_sites == std::vector<std::string>{"f1"});
    CHECK(r.max_lambda_subset.ordering == std::vector<std::string>{"f3", "f2"});
}

TEST_CASE("depth zero returns the baseline only") {
    ScanConfig config;
    config.removal_depth = 0;
    const ScanResult r = max_lambda_search(fv({1, 2, 3}), config);
    CHECK(r.computations_performed == 1);
    CHECK(r.per_site_scores.empty());
    CHECK(r.max_lambda_subset.removed_sites.empty());
    CHECK(r.max_lambda_subset.lambda == doctest::Approx(r.baseline_lambda).epsilon(1e-15));
}

TEST_CASE("the dominant-count site ranks first in the worked 4-site case") {
    const ScanResult r = leave_one_out_scan(fv({1, 2, 3, 1000}), ScanConfig{});
    // Pinned ranking by |delta_lambda|: f4 (1.729), f2 (0.491), f3 (0.383), f1 (0.103).
    CHECK(r.per_site_scores[0].site == "f4");
    CHECK(r.per_site_scores[1].site == "f2");
    CHECK(r.per_site_scores[2].site == "f3");
    CHECK(r.per_site_scores[3].site == "f1");

    const double baseline = oracle::cofactor_lambda({1000, 3, 2, 1});
    CHECK(r.baseline_lambda == doctest::Approx(baseline).epsilon(1e-12));
    CHECK(score_of(r, "f4").delta_lambda ==
          doctest::Approx(baseline - oracle::cofactor_lambda({3, 2, 1})).epsilon(1e-12));
    CHECK(score_of(r, "f1").delta_lambda ==
          doctest::Approx(baseline - oracle::cofactor_lambda({1000, 3, 2})).epsilon(1e-12));
}

TEST_CASE("search-space accounting matches the factorial count") {
    ScanConfig config;
    config.removal_depth = 1;
    config.ordering_mode = OrderingMode::exhaustive_permutations;
    const ScanResult r = max_lambda_search(fv({1, 2, 3, 7}), config);
    CHECK(r.computations_performed == 48);  // 4! + 4 * 3!
}

TEST_CASE("scans are deterministic") {
    std::mt19937_64 rng(13);
    std::vector<double> counts(6);
    for (double& c : counts) c = 1.0 + static_cast<double>(rng() % 100000) / 100.0;
    const FrequencyVector f = FrequencyVector::from_counts(counts);

    for (OrderingMode mode : {OrderingMode::canonical, OrderingMode::exhaustive_permutations,
                              OrderingMode::sampled_permutations}) {
        ScanConfig config;
        config.ordering_mode = mode;
        config.permutation_sample_count = 40;
        config.seed = 2024;
        const ScanResult a = leave_one_out_scan(f, config);
        const ScanResult b = leave_one_out_scan(f, config);
        CHECK(a.baseline_lambda == b.baseline_lambda);
        CHECK(a.computations_performed == b.computations_performed);
        CHECK(a.max_lambda_subset.lambda == b.max_lambda_subset.lambda);
        CHECK(a.max_lambda_subset.removed_sites == b.max_lambda_subset.removed_sites);
        CHECK(a.max_lambda_subset.ordering == b.max_lambda_subset.ordering);
        REQUIRE(a.per_site_scores.size() == b.per_site_scores.size());
        for (std::size_t i = 0; i < a.per_site_scores.size(); ++i) {
            CHECK(a.per_site_scores[i].site == b.per_site_scores[i].site);
            CHECK(a.per_site_scores[i].rank == b.per_site_scores[i].rank);
        }
    }
}

TEST_CASE("deeper searches never lose ground") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<double> counts(6);
        for (double& c : counts) c = std::pow(10.0, static_cast<double>(rng() % 4000) / 1000.0);
        const FrequencyVector f = FrequencyVector::from_counts(counts);
        double prev = -std::numeric_limits<double>::infinity();
        for (std::size_t depth = 0; depth <= 2; ++depth) {
            ScanConfig config;
            config.removal_depth = depth;
            const ScanResult r = max_lambda_search(f, config);
            REQUIRE_FALSE(r.max_lambda_subset.degenerate);
            CHECK(r.max_lambda_subset.lambda >= prev);
            prev = r.max_lambda_subset.lambda;
        }
    }
}

TEST_CASE("saturated sampling reproduces the exhaustive maximum") {
    const FrequencyVector f = fv({2, 3, 5, 11, 17});

    ScanConfig exhaustive;
    exhaustive.removal_depth = 1;
    exhaustive.ordering_mode = OrderingMode::exhaustive_permutations;
    const ScanResult a = max_lambda_search(f, exhaustive);

    ScanConfig sampled;
    sampled.removal_depth = 1;
    sampled.ordering_mode = OrderingMode::sampled_permutations;
    sampled.permutation_sample_count = 120;  // >= 5!, so every ordering is covered
    sampled.seed = 9;
    const ScanResult b = max_lambda_search(f, sampled);

    CHECK(a.max_lambda_subset.lambda == b.max_lambda_subset.lambda);
    CHECK(a.max_lambda_subset.removed_sites == b.max_lambda_subset.removed_sites);
    CHECK(a.max_lambda_subset.ordering == b.max_lambda_subset.ordering);
}

TEST_CASE("exhaustive mode refuses oversized inputs") {
    std::vector<double> counts(9);
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] = static_cast<double>(i + 2);
    ScanConfig config;
    config.ordering_mode = OrderingMode::exhaustive_permutations;
    try {
        leave_one_out_scan(FrequencyVector::from_counts(counts), config);
        FAIL("expected search_space_error");
    } catch (const search_space_error& e) {
        CHECK(std::string(e.what()).find("sampled") != std::string::npos);
    }
}

TEST_CASE("preconditions are enforced") {
    CHECK_THROWS_AS(leave_one_out_scan(fv({1, 2}), ScanConfig{}), std::invalid_argument);
    ScanConfig too_deep;
    too_deep.removal_depth = 2;
    CHECK_THROWS_AS(max_lambda_search(fv({1, 2, 3}), too_deep), std::invalid_argument);
}

TEST_CASE("every site is scored exactly once") {
    std::mt19937_64 rng(55);
    for (int iter = 0; iter < 10; ++iter) {
        const std::size_t n = 3 + rng() % 6;
        std::vector<double> counts(n);
        for (double& c : counts) c = 1.0 + static_cast<double>(rng() % 10000);
        const ScanResult r =
            leave_one_out_scan(FrequencyVector::from_counts(counts), ScanConfig{});
        REQUIRE(r.per_site_scores.size() == n);
        std::set<std::string> sites;
        std::set<std::size_t> ranks;
        for (const SiteScore& s : r.per_site_scores) {
            sites.insert(s.site);
            ranks.insert(s.rank);
        }
        CHECK(sites.size() == n);
        CHECK(*ranks.begin() == 1);
        CHECK(*ranks.rbegin() == n);
    }
}

}  // TEST_SUITE
