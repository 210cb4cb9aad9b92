#ifndef HNWSN_DISTRIBUTIONS_HPP
#define HNWSN_DISTRIBUTIONS_HPP

// Half-normal densities, moments and samplers, plus sensor deployment models.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hnwsn/geometry.hpp"
#include "hnwsn/rng.hpp"
#include "hnwsn/special.hpp"

namespace hnwsn {

inline constexpr double kSqrtTwoOverPi = std::numbers::sqrt2 * std::numbers::inv_sqrtpi;

struct HalfNormalParams
{
    double sigma = 1.0;

    void validate() const
    {
        if (!(sigma > 0.0) || !std::isfinite(sigma))
            throw std::invalid_argument("HalfNormalParams: sigma must be finite and > 0");
    }
};

struct Correlated2DParams
{
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    double rho = 0.0;

    void validate() const
    {
        if (!(sigma1 > 0.0) || !(sigma2 > 0.0))
            throw std::invalid_argument("Correlated2DParams: sigmas must be > 0");
        if (!(std::fabs(rho) < 1.0))
            throw std::invalid_argument("Correlated2DParams: |rho| must be < 1");
    }
};

namespace detail {
inline void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite argument");
}
}  // namespace detail

inline double half_normal_pdf(double y, HalfNormalParams params)
{
    detail::require_finite(y, "half_normal_pdf");
    params.validate();
    if (y < 0.0) return 0.0;
    const double z = y / params.sigma;
    return kSqrtTwoOverPi / params.sigma * std::exp(-0.5 * z * z);
}

inline double half_normal_cdf(double y, HalfNormalParams params)
{
    detail::require_finite(y, "half_normal_cdf");
    params.validate();
    if (y <= 0.0) return 0.0;
    return erf_approx(y / (params.sigma * std::numbers::sqrt2));
}

inline double half_normal_mean(HalfNormalParams params)
{
    params.validate();
    return params.sigma * kSqrtTwoOverPi;
}

inline double half_normal_sample(Rng& rng, HalfNormalParams params)
{
    return std::fabs(params.sigma * rng.normal());
}

/// Folded bivariate normal with correlation rho; zero off the open quadrant.
inline double correlated_half_normal_pdf(double x, double y, Correlated2DParams p)
{
    p.validate();
    if (!(x >= 0.0) || !(y >= 0.0)) return 0.0;
    const double one_m_rho2 = 1.0 - p.rho * p.rho;
    const double u = x / p.sigma1;
    const double v = y / p.sigma2;
    const double norm = 2.0 / (std::numbers::pi * p.sigma1 * p.sigma2 * std::sqrt(one_m_rho2));
    // exp(-q) cosh(c) written as a sum of two exponentials to avoid overflow in cosh
    const double q = (u * u + v * v) / (2.0 * one_m_rho2);
    const double c = p.rho * u * v / one_m_rho2;
    return norm * 0.5 * (std::exp(c - q) + std::exp(-c - q));
}

/// Equal-sigma independent form on the positive quadrant.
inline double quadrant_pdf(double x, double y, HalfNormalParams params)
{
    params.validate();
    if (!(x >= 0.0) || !(y >= 0.0)) return 0.0;
    const double s2 = params.sigma * params.sigma;
    return 2.0 / (std::numbers::pi * s2) * std::exp(-(x * x + y * y) / (2.0 * s2));
}

/// Deployment density used by the analytic model: x half-normal, y normal,
/// both with scale sigma, on the half-plane x >= 0.
inline double halfplane_pdf(double x, double y, HalfNormalParams params)
{
    params.validate();
    if (!(x >= 0.0)) return 0.0;
    const double s2 = params.sigma * params.sigma;
    return 1.0 / (std::numbers::pi * s2) * std::exp(-(x * x + y * y) / (2.0 * s2));
}

// --- deployment models ------------------------------------------------------

enum class DeploymentKind { UniformRect, HalfPlaneHalfNormal, StripHalfNormal, QuadrantHalfNormal };

inline std::string_view to_string(DeploymentKind kind)
{
    switch (kind) {
    case DeploymentKind::UniformRect: return "uniform";
    case DeploymentKind::HalfPlaneHalfNormal: return "half_normal";
    case DeploymentKind::StripHalfNormal: return "strip_half_normal";
    case DeploymentKind::QuadrantHalfNormal: return "quadrant_half_normal";
    }
    return "unknown";
}

inline DeploymentKind parse_deployment_kind(std::string_view name)
{
    for (auto k : {DeploymentKind::UniformRect, DeploymentKind::HalfPlaneHalfNormal,
                   DeploymentKind::StripHalfNormal, DeploymentKind::QuadrantHalfNormal}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown deployment model '" + std::string(name) +
                                "' (expected uniform, half_normal, strip_half_normal or "
                                "quadrant_half_normal)");
}

class SamplingError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Where sensors come from. Half-normal kinds measure x from the target
/// boundary x = 0. A bounded region truncates by rejection.
struct DeploymentModel
{
    DeploymentKind kind = DeploymentKind::HalfPlaneHalfNormal;
    HalfNormalParams params{};
    Region region = Region::half_plane();

    /// Redraws allowed per position before giving up.
    static constexpr int kMaxRejections = 10000;

    void validate() const
    {
        switch (kind) {
        case DeploymentKind::UniformRect:
            if (!region.bounded()) throw std::invalid_argument("uniform deployment needs a rectangle region");
            break;
        case DeploymentKind::StripHalfNormal:
            if (!region.bounded()) throw std::invalid_argument("strip deployment needs a rectangle region");
            params.validate();
            break;
        case DeploymentKind::HalfPlaneHalfNormal:
        case DeploymentKind::QuadrantHalfNormal:
            params.validate();
            break;
        }
        if (kind != DeploymentKind::UniformRect && region.bounded() && region.x_max() <= 0.0)
            throw std::invalid_argument("half-normal deployment needs a region reaching x > 0");
    }
};

inline Point sample_position(const DeploymentModel& model, Rng& rng)
{
    const Region& region = model.region;
    const double sigma = model.params.sigma;
    if (model.kind == DeploymentKind::UniformRect)
        return {rng.uniform(region.x_min(), region.x_max()), rng.uniform(region.y_min(), region.y_max())};

    for (int attempt = 0; attempt < DeploymentModel::kMaxRejections; ++attempt) {
        Point p;
        switch (model.kind) {
        case DeploymentKind::HalfPlaneHalfNormal:
            p.x = std::fabs(sigma * rng.normal());
            p.y = sigma * rng.normal();
            break;
        case DeploymentKind::StripHalfNormal:
            p.x = std::fabs(sigma * rng.normal());
            p.y = rng.uniform(region.y_min(), region.y_max());
            break;
        case DeploymentKind::QuadrantHalfNormal:
            p.x = std::fabs(sigma * rng.normal());
            p.y = std::fabs(sigma * rng.normal());
            break;
        case DeploymentKind::UniformRect: break;
        }
        if (!region.bounded() || region.contains(p)) return p;
    }
    throw SamplingError("sample_deployment: rejection limit reached; sigma is badly mismatched to the region");
}

inline std::vector<Point> sample_deployment(const DeploymentModel& model, std::size_t n, RandomSeed seed)
{
    model.validate();
    Rng rng(seed);
    std::vector<Point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_position(model, rng));
    return out;
}

// --- Stein characterization -------------------------------------------------
//
// X on [0, inf) is half-normal(1) iff E[f'(X)] = E[X f(X)] - f(0) sqrt(2/pi)
// for suitable f. For scale sigma the samples are divided by sigma first.

enum class SteinFunction { One, Identity, Square };

struct SteinStatistic
{
    double residual = 0.0;        ///< mean of f'(x) - x f(x) + f(0) sqrt(2/pi)
    double standard_error = 0.0;  ///< sample std of the summand / sqrt(n)
};

inline double stein_summand(SteinFunction f, double x) noexcept
{
    switch (f) {
    case SteinFunction::One: return -x + kSqrtTwoOverPi;
    case SteinFunction::Identity: return 1.0 - x * x;
    case SteinFunction::Square: return 2.0 * x - x * x * x;
    }
    return 0.0;
}

inline SteinStatistic stein_statistic(SteinFunction f, std::span<const double> samples, HalfNormalParams params)
{
    params.validate();
    if (samples.empty()) throw std::invalid_argument("stein_residual: empty sample list");
    // Welford
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t n = 0;
    for (double s : samples) {
        if (!(s >= 0.0)) throw std::invalid_argument("stein_residual: samples must be nonnegative");
        const double v = stein_summand(f, s / params.sigma);
        ++n;
        const double delta = v - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (v - mean);
    }
    const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

inline double stein_residual(SteinFunction f, std::span<const double> samples, HalfNormalParams params)
{
    return stein_statistic(f, samples, params).residual;
}

}  // namespace hnwsn

#endif  // HNWSN_DISTRIBUTIONS_HPP
