// benford: frequency-anomaly analysis from the command line.
//
// Subcommands:
//   analyze   lambda statistic + hypothesis test for a site,count file
//   scan      per-site perturbation ranking and lambda-maximizing subset
//   simulate  seeded synthetic trials (optionally with planted anomalies)
//   moments   closed-form moments of the continuous distribution
//
// Exit codes: 0 success, 1 usage/config error, 2 malformed data,
// 3 degenerate analysis (singular ratio matrix).

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "benford/hypothesis.hpp"
#include "benford/io.hpp"
#include "benford/matrix.hpp"
#include "benford/scan.hpp"
#include "benford/simulate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDegenerate = 3;

struct CommonOptions {
    std::string input;
    std::string format = "csv";
    std::string output = "text";
    double alpha = 0.05;
};

struct ScanOptions {
    std::string order = "canonical";
    std::size_t depth = 1;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
};

struct SamplerOptions {
    std::string sampler = "loguniform";
    double orders = 4.0;
    double low = 1.0;
    double high = 1000.0;
    double mean = 100.0;
    double std_dev = 10.0;
    double rate = 1.0;
};

benford::io::InputFormat parse_input_format(const std::string& s) {
    if (s == "csv") return benford::io::InputFormat::csv;
    if (s == "json") return benford::io::InputFormat::json;
    throw std::invalid_argument("unknown input format '" + s + "' (expected csv or json)");
}

bool json_output(const std::string& s) {
    if (s == "text") return false;
    if (s == "json") return true;
    throw std::invalid_argument("unknown output format '" + s + "' (expected text or json)");
}

benford::OrderingMode parse_ordering(const std::string& s) {
    if (s == "canonical") return benford::OrderingMode::canonical;
    if (s == "exhaustive") return benford::OrderingMode::exhaustive_permutations;
    if (s == "sampled") return benford::OrderingMode::sampled_permutations;
    throw std::invalid_argument("unknown ordering '" + s +
                                "' (expected canonical, exhaustive, or sampled)");
}

benford::SamplerKind parse_sampler_kind(const std::string& s) {
    static const std::map<std::string, benford::SamplerKind> kinds = {
        {"loguniform", benford::SamplerKind::log_uniform},
        {"uniform", benford::SamplerKind::uniform},
        {"normal", benford::SamplerKind::normal_truncated},
        {"exponential", benford::SamplerKind::exponential},
        {"benford", benford::SamplerKind::continuous_benford},
    };
    auto it = kinds.find(s);
    if (it == kinds.end())
        throw std::invalid_argument(
            "unknown sampler '" + s +
            "' (expected loguniform, uniform, normal, exponential, or benford)");
    return it->second;
}

benford::SamplerSpec make_sampler(const SamplerOptions& o, std::uint64_t seed) {
    benford::SamplerSpec spec;
    spec.kind = parse_sampler_kind(o.sampler);
    spec.orders_of_magnitude = o.orders;
    spec.low = o.low;
    spec.high = o.high;
    spec.mean = o.mean;
    spec.std_dev = o.std_dev;
    spec.rate = o.rate;
    spec.seed = seed;
    spec.validate();
    return spec;
}

void add_common_options(CLI::App* cmd, CommonOptions& opts, bool with_alpha) {
    cmd->add_option("--input", opts.input, "input file of site,count records")->required();
    cmd->add_option("--format", opts.format, "input format: csv|json (default csv)");
    cmd->add_option("--output", opts.output, "output format: text|json (default text)");
    if (with_alpha)
        cmd->add_option("--alpha", opts.alpha, "significance level (default 0.05)");
}

void add_scan_options(CLI::App* cmd, ScanOptions& opts) {
    cmd->add_option("--order", opts.order,
                    "ordering strategy: canonical|exhaustive|sampled (default canonical)");
    cmd->add_option("--depth", opts.depth, "max sites removed simultaneously (default 1)");
    cmd->add_option("--samples", opts.samples,
                    "random orderings per subset in sampled mode (default 100)");
    cmd->add_option("--seed", opts.seed, "RNG seed (default 0)");
}

int cmd_analyze(const CommonOptions& opts) {
    if (!(opts.alpha > 0.0 && opts.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1)");
    const benford::FrequencyVector f =
        benford::io::load_frequencies(opts.input, parse_input_format(opts.format));
    const benford::AnalysisResult a = benford::lambda_statistic(f);
    const benford::HypothesisResult h = benford::hypothesis_test(a, opts.alpha);
    if (json_output(opts.output))
        std::cout << benford::io::analysis_report(a, h).dump(2) << "\n";
    else
        std::cout << benford::io::analysis_text(a, h);
    return a.degenerate ? kExitDegenerate : kExitOk;
}

int cmd_scan(const CommonOptions& opts, const ScanOptions& sopts) {
    const benford::FrequencyVector f =
        benford::io::load_frequencies(opts.input, parse_input_format(opts.format));
    benford::ScanConfig config;
    config.removal_depth = sopts.depth;
    config.ordering_mode = parse_ordering(sopts.order);
    config.permutation_sample_count = sopts.samples;
    config.seed = sopts.seed;

    // depth 0: baseline only. depth 1: the leave-one-out scan already covers
    // the whole search space. Deeper: ranking still comes from leave-one-out
    // attribution, the maximizer from the subset search.
    benford::ScanResult result;
    if (sopts.depth == 0) {
        result = benford::max_lambda_search(f, config);
    } else if (sopts.depth == 1) {
        result = benford::leave_one_out_scan(f, config);
    } else {
        result = benford::leave_one_out_scan(f, config);
        benford::ScanResult deep = benford::max_lambda_search(f, config);
        result.max_lambda_subset = std::move(deep.max_lambda_subset);
        result.computations_performed += deep.computations_performed;
    }

    if (json_output(opts.output))
        std::cout << benford::io::scan_report(f.size(), result).dump(2) << "\n";
    else
        std::cout << benford::io::scan_text(f.size(), result);
    return result.baseline_degenerate ? kExitDegenerate : kExitOk;
}

struct SimulateOptions {
    SamplerOptions sampler;
    SamplerOptions planted_sampler{.sampler = "uniform"};
    std::size_t sites = 20;
    std::size_t trials = 100;
    std::size_t planted = 0;
    std::uint64_t seed = 0;
    std::string order = "canonical";
    double alpha = 0.05;
    std::string output = "text";
};

int cmd_simulate(const SimulateOptions& opts) {
    if (!(opts.alpha > 0.0 && opts.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1)");
    const benford::SamplerSpec spec = make_sampler(opts.sampler, opts.seed);
    benford::SimulationReport report;
    benford::SamplerSpec planted_spec;
    const bool with_planted = opts.planted > 0;
    if (with_planted) {
        planted_spec = make_sampler(opts.planted_sampler, opts.seed);
        benford::ScanConfig scan;
        scan.ordering_mode = parse_ordering(opts.order);
        scan.seed = opts.seed;
        report = benford::run_planted_anomaly(spec, opts.sites, opts.planted, planted_spec,
                                              opts.trials, scan, opts.alpha);
    } else {
        report = benford::run_trials(spec, opts.sites, opts.trials, opts.alpha);
    }
    const benford::SamplerSpec* planted_ptr = with_planted ? &planted_spec : nullptr;
    if (json_output(opts.output))
        std::cout << benford::io::simulation_report(report, spec, planted_ptr).dump(2) << "\n";
    else
        std::cout << benford::io::simulation_text(report, spec, planted_ptr);
    return kExitOk;
}

int cmd_moments(const std::string& output) {
    if (json_output(output))
        std::cout << benford::io::moments_report().dump(2) << "\n";
    else
        std::cout << benford::io::moments_text();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-anomaly analysis via cyclic ratio matrices"};
    app.require_subcommand(1);

    CommonOptions analyze_opts;
    CLI::App* analyze = app.add_subcommand("analyze", "lambda statistic and hypothesis test");
    add_common_options(analyze, analyze_opts, true);

    CommonOptions scan_common;
    ScanOptions scan_opts;
    CLI::App* scan = app.add_subcommand("scan", "per-site ranking and max-lambda subset search");
    add_common_options(scan, scan_common, false);
    add_scan_options(scan, scan_opts);

    SimulateOptions sim_opts;
    CLI::App* simulate = app.add_subcommand("simulate", "seeded synthetic trials");
    simulate->add_option("--sampler", sim_opts.sampler.sampler,
                         "count sampler: loguniform|uniform|normal|exponential|benford");
    simulate->add_option("--orders", sim_opts.sampler.orders,
                         "orders of magnitude for loguniform (default 4)");
    simulate->add_option("--low", sim_opts.sampler.low, "uniform lower bound (default 1)");
    simulate->add_option("--high", sim_opts.sampler.high, "uniform upper bound (default 1000)");
    simulate->add_option("--mean", sim_opts.sampler.mean, "normal mean (default 100)");
    simulate->add_option("--std", sim_opts.sampler.std_dev, "normal std dev (default 10)");
    simulate->add_option("--rate", sim_opts.sampler.rate, "exponential rate (default 1)");
    simulate->add_option("--sites", sim_opts.sites, "sites per trial (default 20)");
    simulate->add_option("--trials", sim_opts.trials, "number of trials (default 100)");
    simulate->add_option("--planted", sim_opts.planted,
                         "number of planted anomalous sites (default 0)");
    simulate->add_option("--planted-sampler", sim_opts.planted_sampler.sampler,
                         "sampler for planted sites (default uniform)");
    simulate->add_option("--planted-orders", sim_opts.planted_sampler.orders,
                         "planted loguniform orders");
    simulate->add_option("--planted-low", sim_opts.planted_sampler.low,
                         "planted uniform lower bound (default 1)");
    simulate->add_option("--planted-high", sim_opts.planted_sampler.high,
                         "planted uniform upper bound (default 1000)");
    simulate->add_option("--planted-mean", sim_opts.planted_sampler.mean, "planted normal mean");
    simulate->add_option("--planted-std", sim_opts.planted_sampler.std_dev,
                         "planted normal std dev");
    simulate->add_option("--planted-rate", sim_opts.planted_sampler.rate,
                         "planted exponential rate");
    simulate->add_option("--seed", sim_opts.seed, "RNG seed (default 0)");
    simulate->add_option("--order", sim_opts.order,
                         "scan ordering for planted detection (default canonical)");
    simulate->add_option("--alpha", sim_opts.alpha, "significance level (default 0.05)");
    simulate->add_option("--output", sim_opts.output, "output format: text|json (default text)");

    std::string moments_output = "text";
    CLI::App* moments = app.add_subcommand("moments", "distribution moments at full precision");
    moments->add_option("--output", moments_output, "output format: text|json (default text)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(analyze_opts);
        if (scan->parsed()) return cmd_scan(scan_common, scan_opts);
        if (simulate->parsed()) return cmd_simulate(sim_opts);
        if (moments->parsed()) return cmd_moments(moments_output);
    } catch (const benford::io::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const benford::search_space_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
