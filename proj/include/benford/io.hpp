#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "benford/hypothesis.hpp"
#include "benford/matrix.hpp"
#include "benford/scan.hpp"
#include "benford/simulate.hpp"

namespace benford::io {

enum class InputFormat { csv, json };
enum class OutputFormat { text, json };

// Malformed input data: non-positive count, duplicate site, fewer than two
// records, unparseable line. The message carries "<name>:<line>" context.
class data_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CSV: one "site,count" record per line, optional "site,count" header.
// JSON: array of {"site": string, "count": number}.
FrequencyVector parse_csv(std::istream& in, std::string_view name);
FrequencyVector parse_json(std::istream& in, std::string_view name);
FrequencyVector load_frequencies(const std::filesystem::path& path, InputFormat format);

// Machine-readable reports. Non-finite values (degenerate lambda, its t) are
// emitted as JSON null; together with the degenerate flag the original
// extended-real value is recovered exactly.
nlohmann::json analysis_report(const AnalysisResult& a, const HypothesisResult& h);
nlohmann::json scan_report(std::size_t n, const ScanResult& scan);
nlohmann::json simulation_report(const SimulationReport& r, const SamplerSpec& spec,
                                 const SamplerSpec* planted_spec = nullptr);
nlohmann::json moments_report();

// Text renderings of the same values at 7 significant digits.
std::string analysis_text(const AnalysisResult& a, const HypothesisResult& h);
std::string scan_text(std::size_t n, const ScanResult& scan);
std::string simulation_text(const SimulationReport& r, const SamplerSpec& spec,
                            const SamplerSpec* planted_spec = nullptr);
std::string moments_text();

// 7-significant-digit rendering used by the text reports ("inf", "nan" for
// non-finite values).
std::string format_number(double v);

std::string sampler_description(const SamplerSpec& spec);

}  // namespace benford::io
