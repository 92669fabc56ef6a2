#pragma once

#include <cstddef>
#include <cstdint>

#include "benford/matrix.hpp"

namespace benford {

struct HypothesisResult {
    double t_statistic;             // -infinity when degenerate
    std::int64_t degrees_of_freedom;
    double p_value;
    double alpha;
    bool reject_null;
    bool degenerate;
};

// t = (0 - lambda) / sigma with the full-precision sigma of the continuous
// distribution. lambda must be finite.
double t_statistic(double lambda);

// P(T <= t) for Student's t with df degrees of freedom, via the regularized
// incomplete beta function (continued-fraction evaluation). df >= 1.
double student_t_cdf(double t, std::int64_t df);

// Two-sided test of H0: lambda = 0 against HA: lambda != 0 with
// df = n^2 - 1. A degenerate (infinite) lambda is treated as conclusive:
// p = 0, reject. n >= 2, 0 < alpha < 1.
HypothesisResult hypothesis_test(double lambda, std::size_t n, double alpha = 0.05);

inline HypothesisResult hypothesis_test(const AnalysisResult& a, double alpha = 0.05) {
    return hypothesis_test(a.lambda, a.n, alpha);
}

}  // namespace benford
