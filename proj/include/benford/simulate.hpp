#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "benford/matrix.hpp"
#include "benford/scan.hpp"

namespace benford {

enum class SamplerKind { log_uniform, uniform, normal_truncated, exponential, continuous_benford };

// Count generator for synthetic frequency data. Every kind emits strictly
// positive values:
//   log_uniform        10^(U * orders_of_magnitude), the classical
//                      Benford-conforming generator
//   uniform            U[low, high), low > 0 (low == high gives a constant,
//                      deliberately degenerate, stream)
//   normal_truncated   N(mean, std_dev) redrawn until positive; mean > 0
//   exponential        Exp(rate), zero draws redrawn
//   continuous_benford inverse-CDF draw from the ln(x) density on [1, e]
struct SamplerSpec {
    SamplerKind kind = SamplerKind::log_uniform;
    double orders_of_magnitude = 4.0;
    double low = 1.0;
    double high = 1000.0;
    double mean = 100.0;
    double std_dev = 10.0;
    double rate = 1.0;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument on out-of-range parameters.
    void validate() const;
};

struct SimulationReport {
    std::size_t trials = 0;
    std::size_t sites_per_trial = 0;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::vector<double> lambda_samples;  // one per trial; +inf for degenerate trials
    std::size_t rejections = 0;          // non-degenerate trials with p < alpha
    std::size_t degenerate_trials = 0;
    double rejection_rate = 0.0;         // rejections / trials
    std::size_t planted_site_count = 0;
    double detection_precision = 1.0;    // 1.0 by convention when nothing is planted
    double detection_recall = 1.0;

    bool operator==(const SimulationReport&) const = default;
};

// One positive count drawn from the spec using the supplied engine.
double draw_count(const SamplerSpec& spec, std::mt19937_64& rng);

// n_sites counts with ids "site_01".. from the stream derived from
// (spec.seed, trial_index), so trial 0 of run_trials regenerates it exactly.
FrequencyVector generate_frequencies(const SamplerSpec& spec, std::size_t n_sites,
                                     std::uint64_t trial_index = 0);

// Runs `trials` independent trials: generate counts, compute lambda under
// canonical ordering, run the hypothesis test at alpha. Each trial derives
// its own random stream from (seed, trial_index), so the report is
// reproducible and schedule-independent. Degenerate trials are counted
// separately, never dropped.
SimulationReport run_trials(const SamplerSpec& spec, std::size_t n_sites, std::size_t trials,
                            double alpha = 0.05);

// Each trial draws n_sites - planted background counts from spec and
// `planted` counts from planted_spec, runs the leave-one-out scan, and
// scores whether the top-|delta_lambda| sites are the planted ones at
// cutoff = planted. Requires 0 <= planted <= n_sites - 2; planted == 0
// reports precision = recall = 1 by convention and skips the scan.
SimulationReport run_planted_anomaly(const SamplerSpec& spec, std::size_t n_sites,
                                     std::size_t planted, const SamplerSpec& planted_spec,
                                     std::size_t trials, const ScanConfig& scan,
                                     double alpha = 0.05);

namespace detail {
// Trial streams: splitmix64-mixed from (seed, index, role). role 0 is the
// background sampler, role 1 the planted sampler.
std::mt19937_64 derive_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t role = 0);
// 53-bit uniform in [0, 1) with a fully specified mapping from engine output.
double uniform01(std::mt19937_64& rng);
}  // namespace detail

}  // namespace benford
