#include "benford/hypothesis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "benford/measure.hpp"

namespace benford {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Continued fraction for the regularized incomplete beta function
// (modified Lentz evaluation).
double beta_cont_frac(double a, double b, double x) {
    constexpr double kFpMin = 1e-300;
    constexpr double kEps = 1e-15;
    constexpr int kMaxIter = 500;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("incomplete beta: continued fraction did not converge");
}

double ibeta_regularized(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(log_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cont_frac(a, b, x) / a;
    return 1.0 - bt * beta_cont_frac(b, a, 1.0 - x) / b;
}

}  // namespace

double t_statistic(double lambda) {
    if (!std::isfinite(lambda)) throw std::domain_error("t_statistic: lambda must be finite");
    return -lambda / moments().std_dev;
}

double student_t_cdf(double t, std::int64_t df) {
    if (df < 1) throw std::domain_error("student_t_cdf: df must be >= 1");
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (t == 0.0) return 0.5;
    const double nu = static_cast<double>(df);
    const double x = nu / (nu + t * t);
    // I_x(nu/2, 1/2) = P(|T| >= |t|), so half of it is the one-sided tail.
    const double tail = 0.5 * ibeta_regularized(0.5 * nu, 0.5, x);
    return t < 0.0 ? tail : 1.0 - tail;
}

HypothesisResult hypothesis_test(double lambda, std::size_t n, double alpha) {
    if (n < 2) throw std::invalid_argument("hypothesis_test: need n >= 2");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("hypothesis_test: alpha must lie in (0, 1)");
    const std::int64_t df =
        static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n) - 1;

    HypothesisResult r;
    r.degrees_of_freedom = df;
    r.alpha = alpha;
    if (!std::isfinite(lambda)) {
        // Degenerate matrix: infinite deviation from the null, conclusive.
        r.t_statistic = -kInf;
        r.p_value = 0.0;
        r.reject_null = true;
        r.degenerate = true;
        return r;
    }
    r.t_statistic = t_statistic(lambda);
    r.p_value = 2.0 * student_t_cdf(-std::abs(r.t_statistic), df);
    r.reject_null = r.p_value < alpha;
    r.degenerate = false;
    return r;
}

}  // namespace benford
