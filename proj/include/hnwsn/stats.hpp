#ifndef HNWSN_STATS_HPP
#define HNWSN_STATS_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace hnwsn {

struct SampleMoments
{
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased
    double standard_error = 0.0;
};

inline SampleMoments sample_moments(std::span<const double> xs)
{
    if (xs.empty()) throw std::invalid_argument("sample_moments: empty sample");
    double mean = 0.0, m2 = 0.0;
    std::size_t n = 0;
    for (double x : xs) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    SampleMoments m;
    m.mean = mean;
    m.variance = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    m.standard_error = std::sqrt(m.variance / static_cast<double>(n));
    return m;
}

/// sup |F_n - F| of the empirical CDF against a reference CDF.
template <class Cdf>
double kolmogorov_distance(std::span<const double> xs, Cdf&& cdf)
{
    if (xs.empty()) throw std::invalid_argument("kolmogorov_distance: empty sample");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        worst = std::max({worst, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return worst;
}

/// Asymptotic one-sample KS critical value at significance 0.01.
inline double ks_critical_001(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

}  // namespace hnwsn

#endif  // HNWSN_STATS_HPP
