#include "benford/measure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace benford {

namespace {
constexpr double kE = std::numbers::e;
}

MomentSet moments() {
    const double mean = (kE * kE + 1.0) / 4.0;
    const double second = (2.0 * kE * kE * kE + 1.0) / 9.0;
    const double variance = second - mean * mean;
    return MomentSet{mean, second, variance, std::sqrt(variance)};
}

double support_min() { return 1.0; }
double support_max() { return kE; }

double discrete_pmf(int digit, int base) {
    if (base < 2) throw std::domain_error("discrete_pmf: base must be >= 2");
    if (digit < 1 || digit > base - 1)
        throw std::domain_error("discrete_pmf: digit " + std::to_string(digit) +
                                " outside [1, " + std::to_string(base - 1) + "]");
    return std::log1p(1.0 / digit) / std::log(static_cast<double>(base));
}

double continuous_pdf(double x) {
    if (!(x >= 1.0 && x <= kE)) throw std::domain_error("continuous_pdf: x outside [1, e]");
    return std::log(x);
}

double continuous_cdf(double x) {
    if (!(x >= 1.0 && x <= kE)) throw std::domain_error("continuous_cdf: x outside [1, e]");
    return x * std::log(x) - x + 1.0;
}

double sample_continuous(double uniform_draw) {
    if (!(uniform_draw >= 0.0 && uniform_draw < 1.0))
        throw std::domain_error("sample_continuous: draw outside [0, 1)");
    // cdf is strictly increasing on (1, e], so bisection on the full support
    // cannot fail; |cdf'| <= 1 keeps the cdf residual within the bracket width.
    double lo = 1.0;
    double hi = kE;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid * std::log(mid) - mid + 1.0 < uniform_draw)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

int leading_digit(double value, int base) {
    if (base < 2) throw std::domain_error("leading_digit: base must be >= 2");
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::domain_error("leading_digit: value must be positive and finite");
    const double b = static_cast<double>(base);
    double m = value;
    while (m < 1.0) m *= b;
    while (m >= b) m /= b;
    return static_cast<int>(m);
}

}  // namespace benford
