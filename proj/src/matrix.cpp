#include "benford/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "benford/measure.hpp"

namespace benford {

namespace {
constexpr double kPivotThresholdFactor = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();
}

FrequencyVector::FrequencyVector(std::vector<Entry> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2)
        throw std::invalid_argument("FrequencyVector: need at least 2 sites");
    std::unordered_set<std::string> seen;
    for (const Entry& e : entries_) {
        if (!(e.count > 0.0) || !std::isfinite(e.count))
            throw std::invalid_argument("FrequencyVector: count for site '" + e.site +
                                        "' must be positive and finite");
        if (!seen.insert(e.site).second)
            throw std::invalid_argument("FrequencyVector: duplicate site '" + e.site + "'");
    }
}

FrequencyVector FrequencyVector::from_counts(std::span<const double> counts) {
    std::vector<Entry> entries;
    entries.reserve(counts.size());
    int width = 1;
    for (std::size_t k = counts.size(); k >= 10; k /= 10) ++width;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        std::string id = std::to_string(i + 1);
        if (static_cast<int>(id.size()) < width) id.insert(0, width - id.size(), '0');
        entries.push_back(Entry{"f" + id, counts[i]});
    }
    return FrequencyVector(std::move(entries));
}

FrequencyVector FrequencyVector::canonical() const {
    std::vector<Entry> sorted = entries_;
    std::sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.site < b.site;
    });
    return FrequencyVector(std::move(sorted));
}

BenfordMatrix::BenfordMatrix(const FrequencyVector& f) : n_(f.size()), a_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            a_[i * n_ + j] = f.entry(j).count / f.entry((j + i) % n_).count;
}

double log_ratio(double f_i, double f_j) {
    if (!(f_i > 0.0) || !(f_j > 0.0))
        throw std::domain_error("log_ratio: frequencies must be positive");
    return std::log(f_i) - std::log(f_j);
}

LogDetResult log_abs_det(const BenfordMatrix& a) {
    const std::size_t n = a.dimension();
    std::vector<double> m(a.data().begin(), a.data().end());

    double scale = 0.0;
    for (double v : m) scale = std::max(scale, std::abs(v));
    const double threshold = kPivotThresholdFactor * scale;

    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        double pivot_mag = std::abs(m[k * n + k]);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double mag = std::abs(m[r * n + k]);
            if (mag > pivot_mag) {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if (pivot_mag < threshold) return LogDetResult{-kInf, true};
        if (pivot_row != k)
            for (std::size_t c = k; c < n; ++c) std::swap(m[k * n + c], m[pivot_row * n + c]);
        acc += std::log(pivot_mag);
        const double pivot = m[k * n + k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const double factor = m[r * n + k] / pivot;
            if (factor == 0.0) continue;
            for (std::size_t c = k + 1; c < n; ++c) m[r * n + c] -= factor * m[k * n + c];
            m[r * n + k] = 0.0;
        }
    }
    return LogDetResult{acc, false};
}

AnalysisResult lambda_statistic(const FrequencyVector& f) {
    AnalysisResult r = lambda_as_ordered(f.canonical());
    r.order_mode = OrderMode::canonical;
    return r;
}

AnalysisResult lambda_as_ordered(const FrequencyVector& f) {
    const LogDetResult ld = log_abs_det(BenfordMatrix(f));
    AnalysisResult r;
    r.n = f.size();
    r.log_abs_det = ld.value;
    r.degenerate = ld.degenerate;
    r.lambda = ld.degenerate ? kInf : moments().mean - ld.value / static_cast<double>(f.size());
    r.order_mode = OrderMode::canonical;
    return r;
}

}  // namespace benford
