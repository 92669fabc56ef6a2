#include "benford/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "benford/measure.hpp"

namespace benford {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Unbiased bounded draw (rejection on the last partial block).
std::size_t bounded(std::mt19937_64& rng, std::size_t k) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return static_cast<std::size_t>(v % k);
}

// m! saturated to "huge" so comparisons against sample counts stay safe.
std::uint64_t saturated_factorial(std::size_t m) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= m; ++i) {
        if (f > UINT64_MAX / i) return UINT64_MAX;
        f *= i;
    }
    return f;
}

// One candidate in the search space: the arrangement `positions` of the
// subset `kept` (indices into the canonical master arrangement).
struct Candidate {
    double lambda;
    std::vector<std::string> removed_ids;     // ascending site id
    std::vector<std::size_t> positions;       // permutation of 0..m-1
    std::vector<std::size_t> kept;            // master indices, canonical order
};

// Strict total order making the max reduction schedule-independent:
// higher lambda wins; ties fall to the lexicographically smaller removed
// set, then the lexicographically smaller arrangement (identity — the
// canonical arrangement — is smallest).
bool better(const Candidate& a, const Candidate& b) {
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    if (a.removed_ids != b.removed_ids) return a.removed_ids < b.removed_ids;
    return a.positions < b.positions;
}

struct Eval {
    double lambda;
    bool degenerate;
};

class Searcher {
public:
    Searcher(const FrequencyVector& master, const ScanConfig& config)
        : master_(master), config_(config) {}

    std::uint64_t computations() const { return computations_; }
    const std::optional<Candidate>& best() const { return best_; }
    const std::optional<Eval>& baseline() const { return baseline_; }

    // Evaluates every arrangement of `kept` that the ordering strategy
    // prescribes and returns the subset's lambda (the max over arrangements,
    // degenerate only if every arrangement was).
    Eval evaluate_subset(const std::vector<std::size_t>& kept,
                         const std::vector<std::size_t>& removed) {
        std::vector<std::string> removed_ids;
        removed_ids.reserve(removed.size());
        for (std::size_t idx : removed) removed_ids.push_back(master_.entry(idx).site);
        std::sort(removed_ids.begin(), removed_ids.end());

        const std::size_t m = kept.size();
        std::vector<std::size_t> identity(m);
        std::iota(identity.begin(), identity.end(), 0);

        Eval subset{kInf, true};
        auto consider = [&](const std::vector<std::size_t>& positions) {
            const Eval e = evaluate_arrangement(kept, positions);
            if (removed.empty() && positions == identity) baseline_ = e;
            if (e.degenerate) return;
            if (subset.degenerate || e.lambda > subset.lambda)
                subset = e;
            Candidate c{e.lambda, removed_ids, positions, kept};
            if (!best_ || better(c, *best_)) best_ = std::move(c);
        };

        switch (config_.ordering_mode) {
            case OrderingMode::canonical:
                consider(identity);
                break;
            case OrderingMode::exhaustive_permutations: {
                std::vector<std::size_t> perm = identity;
                do {
                    consider(perm);
                } while (std::next_permutation(perm.begin(), perm.end()));
                break;
            }
            case OrderingMode::sampled_permutations: {
                const std::uint64_t requested = config_.permutation_sample_count;
                const std::uint64_t want = std::min<std::uint64_t>(
                    requested == UINT64_MAX ? UINT64_MAX : requested + 1,
                    saturated_factorial(m));
                std::mt19937_64 rng(subset_stream_seed(removed));
                std::set<std::vector<std::size_t>> seen;
                seen.insert(identity);
                consider(identity);
                std::vector<std::size_t> perm = identity;
                while (seen.size() < want) {
                    // Fisher-Yates with unbiased bounded draws.
                    std::iota(perm.begin(), perm.end(), 0);
                    for (std::size_t i = m; i > 1; --i)
                        std::swap(perm[i - 1], perm[bounded(rng, i)]);
                    if (seen.insert(perm).second) consider(perm);
                }
                break;
            }
        }
        return subset;
    }

    void require_exhaustive_fits(std::size_t n) const {
        if (config_.ordering_mode == OrderingMode::exhaustive_permutations &&
            n > config_.max_exhaustive_n)
            throw search_space_error(
                "exhaustive_permutations refused for " + std::to_string(n) + " sites (limit " +
                std::to_string(config_.max_exhaustive_n) +
                "): the ordering space is factorial; use sampled_permutations instead");
    }

private:
    Eval evaluate_arrangement(const std::vector<std::size_t>& kept,
                              const std::vector<std::size_t>& positions) {
        ++computations_;
        std::vector<FrequencyVector::Entry> arranged;
        arranged.reserve(kept.size());
        for (std::size_t p : positions) arranged.push_back(master_.entry(kept[p]));
        const AnalysisResult r = lambda_as_ordered(FrequencyVector(std::move(arranged)));
        return Eval{r.lambda, r.degenerate};
    }

    std::uint64_t subset_stream_seed(const std::vector<std::size_t>& removed) const {
        std::uint64_t h = splitmix64(config_.seed ^ 0x5bf0f7f2u);
        for (std::size_t idx : removed) h = splitmix64(h ^ (idx + 1));
        return h;
    }

    const FrequencyVector& master_;
    const ScanConfig& config_;
    std::uint64_t computations_ = 0;
    std::optional<Candidate> best_;
    std::optional<Eval> baseline_;
};

SubsetChoice finalize_choice(const FrequencyVector& master, const std::optional<Candidate>& best,
                             const std::optional<Eval>& baseline) {
    SubsetChoice choice;
    if (best) {
        choice.removed_sites = best->removed_ids;
        choice.ordering.reserve(best->kept.size());
        for (std::size_t p : best->positions)
            choice.ordering.push_back(master.entry(best->kept[p]).site);
        choice.lambda = best->lambda;
        choice.degenerate = false;
        return choice;
    }
    // Every evaluation was degenerate; report the baseline arrangement.
    for (const auto& e : master.entries()) choice.ordering.push_back(e.site);
    choice.lambda = baseline ? kInf : kNaN;
    choice.degenerate = true;
    return choice;
}

void rank_scores(std::vector<SiteScore>& scores) {
    std::sort(scores.begin(), scores.end(), [](const SiteScore& a, const SiteScore& b) {
        if (a.degenerate != b.degenerate) return !a.degenerate;  // defined scores first
        if (!a.degenerate && std::abs(a.delta_lambda) != std::abs(b.delta_lambda))
            return std::abs(a.delta_lambda) > std::abs(b.delta_lambda);
        return a.site < b.site;
    });
    for (std::size_t i = 0; i < scores.size(); ++i) scores[i].rank = i + 1;
}

}  // namespace

ScanResult leave_one_out_scan(const FrequencyVector& f, const ScanConfig& config) {
    const std::size_t n = f.size();
    if (n < 3)
        throw std::invalid_argument(
            "leave_one_out_scan: need n >= 3 so a removal leaves a valid matrix");

    const FrequencyVector master = f.canonical();
    Searcher searcher(master, config);
    searcher.require_exhaustive_fits(n);

    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    const Eval full = searcher.evaluate_subset(all, {});

    std::vector<SiteScore> scores;
    scores.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> kept;
        kept.reserve(n - 1);
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) kept.push_back(k);
        const Eval sub = searcher.evaluate_subset(kept, {i});
        SiteScore s;
        s.site = master.entry(i).site;
        s.degenerate = full.degenerate || sub.degenerate;
        s.delta_lambda = s.degenerate ? kNaN : full.lambda - sub.lambda;
        scores.push_back(std::move(s));
    }
    rank_scores(scores);

    ScanResult result;
    result.baseline_lambda = searcher.baseline() ? searcher.baseline()->lambda : kNaN;
    result.baseline_degenerate = searcher.baseline() ? searcher.baseline()->degenerate : true;
    result.per_site_scores = std::move(scores);
    result.max_lambda_subset = finalize_choice(master, searcher.best(), searcher.baseline());
    result.computations_performed = searcher.computations();
    return result;
}

ScanResult max_lambda_search(const FrequencyVector& f, const ScanConfig& config) {
    const std::size_t n = f.size();
    if (config.removal_depth > n - 2)
        throw std::invalid_argument(
            "max_lambda_search: removal_depth must leave at least 2 sites");

    const FrequencyVector master = f.canonical();
    Searcher searcher(master, config);
    searcher.require_exhaustive_fits(n);

    // Subsets by size, combinations in lexicographic index order. The merge
    // comparator makes the visit order irrelevant to the result.
    for (std::size_t s = 0; s <= config.removal_depth; ++s) {
        std::vector<std::size_t> comb(s);
        std::iota(comb.begin(), comb.end(), 0);
        while (true) {
            std::vector<std::size_t> kept;
            kept.reserve(n - s);
            for (std::size_t k = 0, c = 0; k < n; ++k) {
                if (c < s && comb[c] == k)
                    ++c;
                else
                    kept.push_back(k);
            }
            searcher.evaluate_subset(kept, comb);

            if (s == 0) break;
            // Advance the combination.
            std::size_t i = s;
            while (i > 0 && comb[i - 1] == n - s + i - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < s; ++j) comb[j] = comb[j - 1] + 1;
        }
    }

    ScanResult result;
    result.baseline_lambda = searcher.baseline() ? searcher.baseline()->lambda : kNaN;
    result.baseline_degenerate = searcher.baseline() ? searcher.baseline()->degenerate : true;
    result.max_lambda_subset = finalize_choice(master, searcher.best(), searcher.baseline());
    result.computations_performed = searcher.computations();
    return result;
}

}  // namespace benford
