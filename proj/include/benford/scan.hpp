#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "benford/matrix.hpp"

namespace benford {

enum class OrderingMode { canonical, exhaustive_permutations, sampled_permutations };

// Thrown when an exhaustive-ordering search is asked for more sites than
// max_exhaustive_n allows; the message suggests sampled_permutations.
class search_space_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScanConfig {
    std::size_t removal_depth = 1;           // max sites removed simultaneously
    OrderingMode ordering_mode = OrderingMode::canonical;
    std::size_t permutation_sample_count = 100;  // sampled mode only
    std::uint64_t seed = 0;
    std::size_t max_exhaustive_n = 8;
};

struct SiteScore {
    std::string site;
    double delta_lambda;  // lambda(full) - lambda(without site); NaN if degenerate
    std::size_t rank;     // 1..n, by descending |delta_lambda|
    bool degenerate;      // full or leave-one-out lambda was degenerate
};

struct SubsetChoice {
    std::vector<std::string> removed_sites;  // ascending site id
    std::vector<std::string> ordering;       // remaining sites in matrix order
    double lambda;
    bool degenerate;  // every evaluation in the search space was degenerate
};

struct ScanResult {
    double baseline_lambda;  // canonical full-set lambda; +inf if degenerate
    bool baseline_degenerate;
    std::vector<SiteScore> per_site_scores;
    SubsetChoice max_lambda_subset;
    std::uint64_t computations_performed;  // lambda evaluations, degenerate included
};

// For each site, evaluates lambda with that site removed (under the
// configured ordering strategy) and ranks sites by |delta_lambda|.
// Requires n >= 3 so that every leave-one-out subset still has 2 sites.
// max_lambda_subset covers the empty removal plus all single removals.
ScanResult leave_one_out_scan(const FrequencyVector& f, const ScanConfig& config);

// Enumerates every removal subset of size <= removal_depth, evaluates each
// remaining site set under the ordering strategy (canonical: one
// arrangement; exhaustive: all m!; sampled: the canonical arrangement plus
// seeded distinct random arrangements), and returns the lambda maximizer.
// Ties break toward the lexicographically smallest removed-site set, then
// the lexicographically smallest arrangement relative to canonical order,
// so the reduction is schedule-independent.
ScanResult max_lambda_search(const FrequencyVector& f, const ScanConfig& config);

}  // namespace benford
