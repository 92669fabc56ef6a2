#pragma once

#include <cstdint>

namespace benford {

// Closed-form moments of the continuous distribution with density ln(x) on
// [1, e]:
//   mean          = (e^2 + 1) / 4
//   second_moment = (2 e^3 + 1) / 9
// Commonly quoted 4-digit roundings are 2.0973 and 4.5746; all computation
// here uses the full-precision closed forms.
struct MomentSet {
    double mean;
    double second_moment;
    double variance;
    double std_dev;
};

MomentSet moments();

// Support of the continuous distribution.
double support_min();  // 1
double support_max();  // e

// P(leading digit = digit) in the given base: log_base(1 + 1/digit).
// digit must lie in [1, base-1], base >= 2.
double discrete_pmf(int digit, int base);

// Density ln(x) on [1, e].
double continuous_pdf(double x);

// CDF x*ln(x) - x + 1 on [1, e].
double continuous_cdf(double x);

// Inverse-CDF draw: returns the x in [1, e] with cdf(x) = uniform_draw,
// located by bisection to 1e-12 absolute tolerance. uniform_draw in [0, 1).
double sample_continuous(double uniform_draw);

// First significand digit of value in the given base, in {1, .., base-1}.
// value must be positive and finite.
int leading_digit(double value, int base);

}  // namespace benford
