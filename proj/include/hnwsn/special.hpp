#ifndef HNWSN_SPECIAL_HPP
#define HNWSN_SPECIAL_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hnwsn {

namespace detail {

// erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated with the modified Lentz method. Accurate for x >= 2.
inline double erfc_continued_fraction(double x)
{
    constexpr double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int n = 1; n < 200; ++n) {
        const double a = 0.5 * n;
        d = x + a * d;
        d = 1.0 / (d == 0.0 ? tiny : d);
        c = x + a / c;
        if (c == 0.0) c = tiny;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x * x) * std::numbers::inv_sqrtpi / f;
}

}  // namespace detail

// Error function from the all-positive series
//
//     erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n  x (2x^2)^n / (1*3*...*(2n+1))
//
// Term ratios are q_n = 2x^2 / (2n+3); once q_n < 1 the tail after the
// current term is bounded by t_n q_n / (1 - q_n), and summation stops when
// that bound drops below 1e-17 of the partial sum. No cancellation occurs, so
// the absolute error stays near machine epsilon. For |x| >= 2 the result is
// 1 - erfc(x) from the continued fraction, which stays monotone near 1. For
// |x| >= 6 it is +-1 (erfc(6) ~ 2.2e-17).
inline double erf_approx(double x)
{
    if (!std::isfinite(x)) {
        if (std::isnan(x)) throw std::invalid_argument("erf_approx: NaN argument");
        return x > 0 ? 1.0 : -1.0;
    }
    const double ax = std::fabs(x);
    if (ax >= 6.0) return x > 0 ? 1.0 : -1.0;
    if (ax == 0.0) return x;  // keeps the sign of -0.0
    if (ax >= 2.0) {
        const double value = 1.0 - detail::erfc_continued_fraction(ax);
        return x < 0 ? -value : value;
    }

    const double two_x2 = 2.0 * ax * ax;
    double term = ax;
    double sum = ax;
    for (int n = 0; n < 500; ++n) {
        const double q = two_x2 / (2.0 * n + 3.0);
        term *= q;
        sum += term;
        if (q < 1.0 && term * q / (1.0 - q) < 1e-17 * sum) break;
    }
    const double value = std::min(1.0, 2.0 * std::numbers::inv_sqrtpi * std::exp(-ax * ax) * sum);
    return x < 0 ? -value : value;
}

}  // namespace hnwsn

#endif  // HNWSN_SPECIAL_HPP
