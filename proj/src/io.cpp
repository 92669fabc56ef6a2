#include "benford/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "benford/measure.hpp"

namespace benford::io {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Quoted 4-digit reference values commonly attached to this distribution.
// The quoted std_dev is inconsistent with the quoted variance
// (sqrt(0.1759) = 0.4194, not 0.4149); computation uses full precision.
constexpr double kQuotedMean = 2.0973;
constexpr double kQuotedSecondMoment = 4.5746;
constexpr double kQuotedVariance = 0.1759;
constexpr double kQuotedStdDev = 0.4149;
constexpr const char* kStdDevNote =
    "note: quoted std_dev 0.4149 is inconsistent with quoted variance 0.1759 "
    "(sqrt(0.1759) = 0.4194); the full-precision value is used throughout";

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_positive_count(std::string_view text, double& out) {
    text = trim(text);
    if (text.empty()) return false;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) return false;
    return std::isfinite(out);
}

[[noreturn]] void fail(std::string_view name, std::size_t line, const std::string& what) {
    throw data_error(std::string(name) + ":" + std::to_string(line) + ": " + what);
}

nlohmann::json num_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

const char* order_mode_name(OrderMode m) {
    return m == OrderMode::canonical ? "canonical" : "max_permutation";
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.7g", v);
    return buf;
}

FrequencyVector parse_csv(std::istream& in, std::string_view name) {
    std::vector<FrequencyVector::Entry> entries;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    bool first_record = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) fail(name, line_no, "expected 'site,count'");
        std::string site(trim(std::string_view(line).substr(0, comma)));
        const std::string_view count_text = std::string_view(line).substr(comma + 1);
        if (first_record) {
            first_record = false;
            // Optional header line.
            std::string lowered = site;
            std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            if (lowered == "site" && trim(count_text) == "count") continue;
        }
        if (site.empty()) fail(name, line_no, "empty site id");
        double count = 0.0;
        if (!parse_positive_count(count_text, count))
            fail(name, line_no, "count is not a finite number (site '" + site + "')");
        if (!(count > 0.0))
            fail(name, line_no, "count must be positive (site '" + site + "')");
        if (!seen.insert(site).second) fail(name, line_no, "duplicate site '" + site + "'");
        entries.push_back({std::move(site), count});
    }
    if (entries.size() < 2)
        throw data_error(std::string(name) + ": expected at least 2 records, got " +
                         std::to_string(entries.size()));
    return FrequencyVector(std::move(entries));
}

FrequencyVector parse_json(std::istream& in, std::string_view name) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw data_error(std::string(name) + ": " + e.what());
    }
    if (!doc.is_array())
        throw data_error(std::string(name) + ": expected a JSON array of records");
    std::vector<FrequencyVector::Entry> entries;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const nlohmann::json& rec = doc[i];
        const std::string where = std::string(name) + ": record " + std::to_string(i + 1);
        if (!rec.is_object() || !rec.contains("site") || !rec.contains("count"))
            throw data_error(where + ": expected {\"site\": string, \"count\": number}");
        if (!rec["site"].is_string() || !rec["count"].is_number())
            throw data_error(where + ": expected {\"site\": string, \"count\": number}");
        std::string site = rec["site"].get<std::string>();
        const double count = rec["count"].get<double>();
        if (site.empty()) throw data_error(where + ": empty site id");
        if (!(count > 0.0) || !std::isfinite(count))
            throw data_error(where + ": count must be positive (site '" + site + "')");
        if (!seen.insert(site).second) throw data_error(where + ": duplicate site '" + site + "'");
        entries.push_back({std::move(site), count});
    }
    if (entries.size() < 2)
        throw data_error(std::string(name) + ": expected at least 2 records, got " +
                         std::to_string(entries.size()));
    return FrequencyVector(std::move(entries));
}

FrequencyVector load_frequencies(const std::filesystem::path& path, InputFormat format) {
    std::ifstream in(path);
    if (!in) throw data_error(path.string() + ": cannot open for reading");
    return format == InputFormat::csv ? parse_csv(in, path.string())
                                      : parse_json(in, path.string());
}

nlohmann::json analysis_report(const AnalysisResult& a, const HypothesisResult& h) {
    return nlohmann::json{
        {"analysis",
         {{"n", a.n},
          {"order_mode", order_mode_name(a.order_mode)},
          {"log_abs_det", num_or_null(a.log_abs_det)},
          {"lambda", num_or_null(a.lambda)},
          {"degenerate", a.degenerate}}},
        {"hypothesis",
         {{"t_statistic", num_or_null(h.t_statistic)},
          {"degrees_of_freedom", h.degrees_of_freedom},
          {"p_value", h.p_value},
          {"alpha", h.alpha},
          {"reject_null", h.reject_null}}}};
}

nlohmann::json scan_report(std::size_t n, const ScanResult& scan) {
    nlohmann::json ranking = nlohmann::json::array();
    for (const SiteScore& s : scan.per_site_scores)
        ranking.push_back({{"site", s.site},
                           {"delta_lambda", num_or_null(s.delta_lambda)},
                           {"rank", s.rank},
                           {"degenerate", s.degenerate}});
    return nlohmann::json{
        {"n", n},
        {"baseline",
         {{"lambda", num_or_null(scan.baseline_lambda)},
          {"degenerate", scan.baseline_degenerate}}},
        {"ranking", ranking},
        {"max",
         {{"removed_sites", scan.max_lambda_subset.removed_sites},
          {"ordering", scan.max_lambda_subset.ordering},
          {"lambda", num_or_null(scan.max_lambda_subset.lambda)},
          {"degenerate", scan.max_lambda_subset.degenerate}}},
        {"computations_performed", scan.computations_performed}};
}

std::string sampler_description(const SamplerSpec& spec) {
    switch (spec.kind) {
        case SamplerKind::log_uniform:
            return "log_uniform(orders=" + format_number(spec.orders_of_magnitude) + ")";
        case SamplerKind::uniform:
            return "uniform(low=" + format_number(spec.low) +
                   ", high=" + format_number(spec.high) + ")";
        case SamplerKind::normal_truncated:
            return "normal_truncated(mean=" + format_number(spec.mean) +
                   ", std=" + format_number(spec.std_dev) + ")";
        case SamplerKind::exponential:
            return "exponential(rate=" + format_number(spec.rate) + ")";
        case SamplerKind::continuous_benford:
            return "continuous_benford";
    }
    return "unknown";
}

namespace {

nlohmann::json sampler_json(const SamplerSpec& spec) {
    switch (spec.kind) {
        case SamplerKind::log_uniform:
            return {{"kind", "log_uniform"}, {"orders_of_magnitude", spec.orders_of_magnitude}};
        case SamplerKind::uniform:
            return {{"kind", "uniform"}, {"low", spec.low}, {"high", spec.high}};
        case SamplerKind::normal_truncated:
            return {{"kind", "normal_truncated"}, {"mean", spec.mean}, {"std_dev", spec.std_dev}};
        case SamplerKind::exponential:
            return {{"kind", "exponential"}, {"rate", spec.rate}};
        case SamplerKind::continuous_benford:
            return {{"kind", "continuous_benford"}};
    }
    return {{"kind", "unknown"}};
}

double mean_abs_lambda(const SimulationReport& r) {
    double sum = 0.0;
    for (double v : r.lambda_samples) sum += std::abs(v);
    return sum / static_cast<double>(r.lambda_samples.size());
}

double mean_lambda(const SimulationReport& r) {
    double sum = 0.0;
    for (double v : r.lambda_samples) sum += v;
    return sum / static_cast<double>(r.lambda_samples.size());
}

}  // namespace

nlohmann::json simulation_report(const SimulationReport& r, const SamplerSpec& spec,
                                 const SamplerSpec* planted_spec) {
    nlohmann::json samples = nlohmann::json::array();
    for (double v : r.lambda_samples) samples.push_back(num_or_null(v));
    nlohmann::json out{{"trials", r.trials},
                       {"sites_per_trial", r.sites_per_trial},
                       {"alpha", r.alpha},
                       {"seed", r.seed},
                       {"sampler", sampler_json(spec)},
                       {"rejections", r.rejections},
                       {"degenerate_trials", r.degenerate_trials},
                       {"rejection_rate", r.rejection_rate},
                       {"mean_lambda", num_or_null(mean_lambda(r))},
                       {"mean_abs_lambda", num_or_null(mean_abs_lambda(r))},
                       {"planted_site_count", r.planted_site_count},
                       {"detection_precision", r.detection_precision},
                       {"detection_recall", r.detection_recall},
                       {"lambda_samples", samples}};
    if (planted_spec) out["planted_sampler"] = sampler_json(*planted_spec);
    return out;
}

nlohmann::json moments_report() {
    const MomentSet m = moments();
    return nlohmann::json{{"mean", m.mean},
                          {"second_moment", m.second_moment},
                          {"variance", m.variance},
                          {"std_dev", m.std_dev},
                          {"quoted",
                           {{"mean", kQuotedMean},
                            {"second_moment", kQuotedSecondMoment},
                            {"variance", kQuotedVariance},
                            {"std_dev", kQuotedStdDev}}},
                          {"note", kStdDevNote}};
}

std::string analysis_text(const AnalysisResult& a, const HypothesisResult& h) {
    std::ostringstream out;
    out << "sites               " << a.n << "\n"
        << "ordering            " << order_mode_name(a.order_mode) << "\n"
        << "log|det A|          " << format_number(a.log_abs_det) << "\n"
        << "lambda              " << format_number(a.lambda) << "\n"
        << "degenerate          " << (a.degenerate ? "yes" : "no") << "\n"
        << "t statistic         " << format_number(h.t_statistic) << "\n"
        << "degrees of freedom  " << h.degrees_of_freedom << "\n"
        << "p value             " << format_number(h.p_value) << "\n"
        << "alpha               " << format_number(h.alpha) << "\n"
        << "reject H0           " << (h.reject_null ? "yes" : "no") << "\n";
    return out.str();
}

std::string scan_text(std::size_t n, const ScanResult& scan) {
    std::ostringstream out;
    out << "sites               " << n << "\n"
        << "baseline lambda     " << format_number(scan.baseline_lambda) << "\n"
        << "baseline degenerate " << (scan.baseline_degenerate ? "yes" : "no") << "\n";
    if (!scan.per_site_scores.empty()) {
        out << "rank  site                delta_lambda\n";
        for (const SiteScore& s : scan.per_site_scores) {
            char rank[8];
            std::snprintf(rank, sizeof(rank), "%4zu", s.rank);
            out << rank << "  ";
            std::string site = s.site;
            if (site.size() < 18) site.append(18 - site.size(), ' ');
            out << site << "  "
                << (s.degenerate ? "degenerate" : format_number(s.delta_lambda)) << "\n";
        }
    }
    const SubsetChoice& c = scan.max_lambda_subset;
    out << "max lambda          " << format_number(c.lambda)
        << (c.degenerate ? " (degenerate)" : "") << "\n";
    out << "max removed         ";
    if (c.removed_sites.empty())
        out << "(none)";
    else
        for (std::size_t i = 0; i < c.removed_sites.size(); ++i)
            out << (i ? "," : "") << c.removed_sites[i];
    out << "\n" << "max ordering        ";
    for (std::size_t i = 0; i < c.ordering.size(); ++i) out << (i ? "," : "") << c.ordering[i];
    out << "\n" << "computations        " << scan.computations_performed << "\n";
    return out.str();
}

std::string simulation_text(const SimulationReport& r, const SamplerSpec& spec,
                            const SamplerSpec* planted_spec) {
    std::ostringstream out;
    out << "trials              " << r.trials << "\n"
        << "sites per trial     " << r.sites_per_trial << "\n"
        << "sampler             " << sampler_description(spec) << "\n";
    if (planted_spec) out << "planted sampler     " << sampler_description(*planted_spec) << "\n";
    out << "seed                " << r.seed << "\n"
        << "alpha               " << format_number(r.alpha) << "\n"
        << "rejections          " << r.rejections << "\n"
        << "degenerate trials   " << r.degenerate_trials << "\n"
        << "rejection rate      " << format_number(r.rejection_rate) << "\n"
        << "mean lambda         " << format_number(mean_lambda(r)) << "\n"
        << "mean |lambda|       " << format_number(mean_abs_lambda(r)) << "\n"
        << "planted sites       " << r.planted_site_count << "\n"
        << "detection precision " << format_number(r.detection_precision) << "\n"
        << "detection recall    " << format_number(r.detection_recall) << "\n";
    return out.str();
}

std::string moments_text() {
    const MomentSet m = moments();
    std::ostringstream out;
    out << "quantity        computed    quoted\n"
        << "mean            " << format_number(m.mean) << "    " << format_number(kQuotedMean)
        << "\n"
        << "second_moment   " << format_number(m.second_moment) << "    "
        << format_number(kQuotedSecondMoment) << "\n"
        << "variance        " << format_number(m.variance) << "   " << format_number(kQuotedVariance)
        << "\n"
        << "std_dev         " << format_number(m.std_dev) << "   " << format_number(kQuotedStdDev)
        << "\n"
        << kStdDevNote << "\n";
    return out.str();
}

}  // namespace benford::io
