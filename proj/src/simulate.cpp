#include "benford/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "benford/hypothesis.hpp"
#include "benford/measure.hpp"

namespace benford {

namespace detail {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
}  // namespace

std::mt19937_64 derive_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t role) {
    return std::mt19937_64(splitmix64(splitmix64(splitmix64(seed) ^ index) ^ role));
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

void SamplerSpec::validate() const {
    switch (kind) {
        case SamplerKind::log_uniform:
            if (!(orders_of_magnitude >= 1.0) || !std::isfinite(orders_of_magnitude))
                throw std::invalid_argument("sampler: orders_of_magnitude must be >= 1");
            break;
        case SamplerKind::uniform:
            if (!(low > 0.0) || !std::isfinite(low))
                throw std::invalid_argument("sampler: uniform low must be positive");
            if (!(high >= low) || !std::isfinite(high))
                throw std::invalid_argument("sampler: uniform high must be >= low");
            break;
        case SamplerKind::normal_truncated:
            if (!(mean > 0.0) || !std::isfinite(mean))
                throw std::invalid_argument("sampler: normal mean must be positive");
            if (!(std_dev > 0.0) || !std::isfinite(std_dev))
                throw std::invalid_argument("sampler: normal std_dev must be positive");
            break;
        case SamplerKind::exponential:
            if (!(rate > 0.0) || !std::isfinite(rate))
                throw std::invalid_argument("sampler: exponential rate must be positive");
            break;
        case SamplerKind::continuous_benford:
            break;
    }
}

double draw_count(const SamplerSpec& spec, std::mt19937_64& rng) {
    switch (spec.kind) {
        case SamplerKind::log_uniform:
            return std::pow(10.0, detail::uniform01(rng) * spec.orders_of_magnitude);
        case SamplerKind::uniform:
            return spec.low + detail::uniform01(rng) * (spec.high - spec.low);
        case SamplerKind::normal_truncated: {
            // Box-Muller; mean > 0 makes each draw positive with p >= 1/2.
            for (;;) {
                const double u1 = 1.0 - detail::uniform01(rng);
                const double u2 = detail::uniform01(rng);
                const double z = std::sqrt(-2.0 * std::log(u1)) *
                                 std::cos(2.0 * std::numbers::pi * u2);
                const double v = spec.mean + spec.std_dev * z;
                if (v > 0.0) return v;
            }
        }
        case SamplerKind::exponential: {
            for (;;) {
                const double u = detail::uniform01(rng);
                if (u > 0.0) return -std::log(u) / spec.rate;
            }
        }
        case SamplerKind::continuous_benford:
            return sample_continuous(detail::uniform01(rng));
    }
    throw std::invalid_argument("sampler: unknown kind");
}

namespace {

std::string site_id(std::size_t index, std::size_t n_sites) {
    int width = 1;
    for (std::size_t k = n_sites; k >= 10; k /= 10) ++width;
    std::string id = std::to_string(index + 1);
    if (static_cast<int>(id.size()) < width) id.insert(0, width - id.size(), '0');
    return "site_" + id;
}

}  // namespace

FrequencyVector generate_frequencies(const SamplerSpec& spec, std::size_t n_sites,
                                     std::uint64_t trial_index) {
    if (n_sites < 2) throw std::invalid_argument("generate_frequencies: need n_sites >= 2");
    spec.validate();
    std::mt19937_64 rng = detail::derive_stream(spec.seed, trial_index, 0);
    std::vector<FrequencyVector::Entry> entries;
    entries.reserve(n_sites);
    for (std::size_t i = 0; i < n_sites; ++i)
        entries.push_back({site_id(i, n_sites), draw_count(spec, rng)});
    return FrequencyVector(std::move(entries));
}

SimulationReport run_trials(const SamplerSpec& spec, std::size_t n_sites, std::size_t trials,
                            double alpha) {
    if (trials < 1) throw std::invalid_argument("run_trials: need trials >= 1");
    if (n_sites < 2) throw std::invalid_argument("run_trials: need n_sites >= 2");
    spec.validate();

    SimulationReport report;
    report.trials = trials;
    report.sites_per_trial = n_sites;
    report.alpha = alpha;
    report.seed = spec.seed;
    report.lambda_samples.reserve(trials);

    for (std::size_t t = 0; t < trials; ++t) {
        const FrequencyVector f = generate_frequencies(spec, n_sites, t);
        const AnalysisResult a = lambda_statistic(f);
        report.lambda_samples.push_back(a.lambda);
        if (a.degenerate) {
            ++report.degenerate_trials;
            continue;
        }
        if (hypothesis_test(a, alpha).reject_null) ++report.rejections;
    }
    report.rejection_rate =
        static_cast<double>(report.rejections) / static_cast<double>(trials);
    return report;
}

SimulationReport run_planted_anomaly(const SamplerSpec& spec, std::size_t n_sites,
                                     std::size_t planted, const SamplerSpec& planted_spec,
                                     std::size_t trials, const ScanConfig& scan, double alpha) {
    if (trials < 1) throw std::invalid_argument("run_planted_anomaly: need trials >= 1");
    if (planted > 0 && planted > n_sites - 2)
        throw std::invalid_argument("run_planted_anomaly: planted must be <= n_sites - 2");
    spec.validate();
    planted_spec.validate();

    SimulationReport report;
    report.trials = trials;
    report.sites_per_trial = n_sites;
    report.alpha = alpha;
    report.seed = spec.seed;
    report.planted_site_count = planted;
    report.lambda_samples.reserve(trials);

    double precision_sum = 0.0;
    std::size_t scored_trials = 0;

    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 background_rng = detail::derive_stream(spec.seed, t, 0);
        std::mt19937_64 planted_rng = detail::derive_stream(planted_spec.seed, t, 1);

        std::vector<FrequencyVector::Entry> entries;
        entries.reserve(n_sites);
        std::unordered_set<std::string> planted_ids;
        for (std::size_t i = 0; i < n_sites; ++i) {
            const bool is_planted = i >= n_sites - planted;
            std::string id = site_id(i, n_sites);
            if (is_planted) planted_ids.insert(id);
            entries.push_back({std::move(id), is_planted ? draw_count(planted_spec, planted_rng)
                                                         : draw_count(spec, background_rng)});
        }
        const FrequencyVector f(std::move(entries));
        const AnalysisResult a = lambda_statistic(f);
        report.lambda_samples.push_back(a.lambda);
        if (a.degenerate) {
            ++report.degenerate_trials;
            continue;
        }
        if (hypothesis_test(a, alpha).reject_null) ++report.rejections;

        if (planted == 0) continue;
        const ScanResult scan_result = leave_one_out_scan(f, scan);
        std::size_t hits = 0;
        for (const SiteScore& s : scan_result.per_site_scores)
            if (s.rank <= planted && planted_ids.count(s.site)) ++hits;
        precision_sum += static_cast<double>(hits) / static_cast<double>(planted);
        ++scored_trials;
    }

    report.rejection_rate =
        static_cast<double>(report.rejections) / static_cast<double>(trials);
    if (planted == 0) {
        report.detection_precision = 1.0;
        report.detection_recall = 1.0;
    } else if (scored_trials > 0) {
        // Cutoff equals the planted count, so precision and recall coincide.
        report.detection_precision = precision_sum / static_cast<double>(scored_trials);
        report.detection_recall = report.detection_precision;
    } else {
        report.detection_precision = 0.0;
        report.detection_recall = 0.0;
    }
    return report;
}

}  // namespace benford
