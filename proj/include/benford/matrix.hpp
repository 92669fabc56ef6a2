#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace benford {

// Named, strictly positive visit counts per site. Order is meaningful: the
// ratio matrix below is built from the entries exactly as arranged.
class FrequencyVector {
public:
    struct Entry {
        std::string site;
        double count;
    };

    // Validates: at least 2 entries, unique site ids, every count positive
    // and finite. Throws std::invalid_argument otherwise.
    explicit FrequencyVector(std::vector<Entry> entries);

    // Convenience: counts get synthetic site ids "f01", "f02", ...
    // (zero-padded so lexicographic order matches index order).
    static FrequencyVector from_counts(std::span<const double> counts);

    std::size_t size() const noexcept { return entries_.size(); }
    const Entry& entry(std::size_t i) const { return entries_[i]; }
    std::span<const Entry> entries() const noexcept { return entries_; }

    // Deterministic arrangement: descending count, ties by ascending site id.
    FrequencyVector canonical() const;

private:
    std::vector<Entry> entries_;
};

// n x n cyclic ratio matrix, A[i][j] = f_j / f_{(j+i) mod n}. Row 0 is all
// ones and the entries of every row multiply to 1.
class BenfordMatrix {
public:
    explicit BenfordMatrix(const FrequencyVector& f);

    std::size_t dimension() const noexcept { return n_; }
    double at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    std::span<const double> data() const noexcept { return a_; }

private:
    std::size_t n_;
    std::vector<double> a_;
};

inline BenfordMatrix build_matrix(const FrequencyVector& f) {
    return BenfordMatrix(f);
}

// ln(f_i) - ln(f_j), the log percent-change between two counts.
double log_ratio(double f_i, double f_j);

struct LogDetResult {
    double value;     // ln|det A|; -infinity when degenerate
    bool degenerate;  // a pivot fell below 1e-12 x the largest entry
};

// ln|det A| via partially pivoted Gaussian elimination, accumulating logs of
// pivot magnitudes so the result never overflows.
LogDetResult log_abs_det(const BenfordMatrix& a);

enum class OrderMode { canonical, max_permutation };

struct AnalysisResult {
    std::size_t n = 0;
    double log_abs_det = 0.0;  // -infinity when degenerate
    double lambda = 0.0;       // +infinity when degenerate
    bool degenerate = false;
    OrderMode order_mode = OrderMode::canonical;
};

// lambda = mean - ln|det A|/n with the sites in canonical order, where mean
// is the closed-form (e^2+1)/4.
AnalysisResult lambda_statistic(const FrequencyVector& f);

// Same statistic but with the sites taken exactly as arranged in f. Used by
// the subset/ordering search, where the arrangement is the thing varied.
AnalysisResult lambda_as_ordered(const FrequencyVector& f);

}  // namespace benford
