#ifndef HNWSN_ANALYTIC_HPP
#define HNWSN_ANALYTIC_HPP

// Analytic detection probability for half-normal deployment.
//
// A single sensor drawn from the half-plane density lands in the detection
// capsule with probability
//
//     p_total = p_rect + p_left + p_right
//
// where p_rect integrates over x in [S-d, S], |y| <= r, and the two half-disks
// of radius r are centred on the path endpoints (S-d, 0) and (S, 0). With N
// independent sensors the intruder is detected with probability
// 1 - (1 - p_total)^N.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "hnwsn/distributions.hpp"
#include "hnwsn/geometry.hpp"
#include "hnwsn/quadrature.hpp"
#include "hnwsn/special.hpp"

namespace hnwsn {

struct CapsuleProbabilities
{
    double rect = 0.0;
    double left = 0.0;
    double right = 0.0;
    double total = 0.0;
    double error_bound = 0.0;
};

namespace detail {

inline void check_inputs(const IntruderScenario& scenario, double r, const QuadratureSpec& spec)
{
    scenario.validate();
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("sensing range r must be finite and > 0");
    spec.validate();
}

inline double clamp_probability(double p) noexcept { return std::clamp(p, 0.0, 1.0); }

// The integrand vanishes for x < support_x_min, so domains are clipped there.
template <class Density>
QuadratureResult rect_integral(const IntruderScenario& s, double r, Density& density, double support_x_min,
                               const QuadratureSpec& spec)
{
    const double x0 = std::max(s.start_s - s.distance_d, support_x_min);
    const double x1 = s.start_s;
    if (!(x1 > x0)) return {};
    return integrate_2d(density, {x0, x1}, std::pair{-r, r}, spec);
}

template <class Density>
QuadratureResult half_disk_integral(double centre, double r, bool left, Density& density, double support_x_min,
                                    const QuadratureSpec& spec)
{
    double x0 = left ? centre - r : centre;
    double x1 = left ? centre : centre + r;
    x0 = std::max(x0, support_x_min);
    if (!(x1 > x0)) return {};
    auto y_bounds = [centre, r](double x) {
        const double u = x - centre;
        const double h = std::sqrt(std::max(0.0, r * r - u * u));
        return std::pair{-h, h};
    };
    return integrate_2d(density, {x0, x1}, y_bounds, spec);
}

}  // namespace detail

/// Capsule pieces for an arbitrary planar density. support_x_min clips the
/// domains where the density is known to vanish; pass -infinity for none.
template <class Density>
CapsuleProbabilities integrate_capsule(const IntruderScenario& scenario, double r, Density&& density,
                                       double support_x_min, const QuadratureSpec& spec = {})
{
    detail::check_inputs(scenario, r, spec);
    // Each of the three pieces gets a third of the budget.
    QuadratureSpec piece = spec;
    piece.absolute_tolerance = spec.absolute_tolerance / 3.0;

    const auto rect = detail::rect_integral(scenario, r, density, support_x_min, piece);
    const auto left = detail::half_disk_integral(scenario.start_s - scenario.distance_d, r, true, density,
                                                 support_x_min, piece);
    const auto right = detail::half_disk_integral(scenario.start_s, r, false, density, support_x_min, piece);

    CapsuleProbabilities out;
    out.rect = rect.value;
    out.left = left.value;
    out.right = right.value;
    out.total = out.rect + out.left + out.right;
    out.error_bound = rect.error_bound + left.error_bound + right.error_bound;
    return out;
}

inline CapsuleProbabilities capsule_probabilities(const IntruderScenario& scenario, double r, double sigma,
                                                  const QuadratureSpec& spec = {})
{
    const HalfNormalParams params{sigma};
    params.validate();
    auto density = [params](double x, double y) { return halfplane_pdf(x, y, params); };
    CapsuleProbabilities p = integrate_capsule(scenario, r, density, 0.0, spec);
    p.rect = detail::clamp_probability(p.rect);
    p.left = detail::clamp_probability(p.left);
    p.right = detail::clamp_probability(p.right);
    p.total = detail::clamp_probability(p.rect + p.left + p.right);
    return p;
}

inline double p_rect(const IntruderScenario& scenario, double r, double sigma, const QuadratureSpec& spec = {})
{
    detail::check_inputs(scenario, r, spec);
    const HalfNormalParams params{sigma};
    params.validate();
    auto density = [params](double x, double y) { return halfplane_pdf(x, y, params); };
    return detail::clamp_probability(detail::rect_integral(scenario, r, density, 0.0, spec).value);
}

/// Closed form of p_rect: the half-plane density factorises in x and y.
inline double p_rect_separable(const IntruderScenario& scenario, double r, double sigma)
{
    scenario.validate();
    const HalfNormalParams params{sigma};
    const double fx = half_normal_cdf(scenario.start_s, params) -
                      half_normal_cdf(scenario.start_s - scenario.distance_d, params);
    return fx * erf_approx(r / (sigma * std::numbers::sqrt2));
}

/// Half-disk of radius r centred at the stopping point (S - d, 0).
inline double p_left_disk(const IntruderScenario& scenario, double r, double sigma, const QuadratureSpec& spec = {})
{
    detail::check_inputs(scenario, r, spec);
    const HalfNormalParams params{sigma};
    params.validate();
    auto density = [params](double x, double y) { return halfplane_pdf(x, y, params); };
    return detail::clamp_probability(
        detail::half_disk_integral(scenario.start_s - scenario.distance_d, r, true, density, 0.0, spec).value);
}

/// Half-disk of radius r centred at the entry point (S, 0).
inline double p_right_disk(const IntruderScenario& scenario, double r, double sigma, const QuadratureSpec& spec = {})
{
    detail::check_inputs(scenario, r, spec);
    const HalfNormalParams params{sigma};
    params.validate();
    auto density = [params](double x, double y) { return halfplane_pdf(x, y, params); };
    return detail::clamp_probability(
        detail::half_disk_integral(scenario.start_s, r, false, density, 0.0, spec).value);
}

inline double p_total(const IntruderScenario& scenario, double r, double sigma, const QuadratureSpec& spec = {})
{
    return capsule_probabilities(scenario, r, sigma, spec).total;
}

/// (1 - p)^n via exp(n log1p(-p)).
inline double not_detected_probability(double p_single, std::size_t n)
{
    if (!(p_single >= 0.0 && p_single <= 1.0))
        throw std::invalid_argument("detection probability: p_single must lie in [0, 1]");
    if (n == 0) return 1.0;
    if (p_single == 1.0) return 0.0;
    return std::exp(static_cast<double>(n) * std::log1p(-p_single));
}

/// 1 - (1 - p)^n, evaluated as -expm1(n log1p(-p)) so tiny n*p keeps its digits.
inline double detection_probability(double p_single, std::size_t n)
{
    if (!(p_single >= 0.0 && p_single <= 1.0))
        throw std::invalid_argument("detection probability: p_single must lie in [0, 1]");
    if (n == 0) return 0.0;
    if (n == 1) return p_single;
    if (p_single == 1.0) return 1.0;
    return -std::expm1(static_cast<double>(n) * std::log1p(-p_single));
}

class ContainmentError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Uniform deployment: capsule area over region area. The capsule must lie
/// inside the region; no clipping rule is applied.
inline double uniform_p_single(const IntruderScenario& scenario, double r, const Region& region)
{
    scenario.validate();
    if (!(r > 0.0)) throw std::invalid_argument("uniform_p_single: r must be > 0");
    if (!region.bounded()) throw std::invalid_argument("uniform_p_single: region must be a rectangle");
    if (!capsule_inside(detection_capsule(scenario, r), region))
        throw ContainmentError("uniform_p_single: detection capsule is not contained in the region");
    return capsule_area(scenario.distance_d, r) / region.area();
}

struct DetectionReport
{
    double p_rect = 0.0;
    double p_left = 0.0;
    double p_right = 0.0;
    double p_total = 0.0;
    std::optional<double> p_single_uniform;  ///< absent without a containing rectangle
    double p_d = 0.0;
    double p_not_detected = 1.0;
    std::size_t n_sensors = 0;
    double quadrature_error_bound = 0.0;
};

inline DetectionReport full_report(const IntruderScenario& scenario, double r, double sigma, std::size_t n,
                                   const std::optional<Region>& region = std::nullopt,
                                   const QuadratureSpec& spec = {})
{
    const CapsuleProbabilities parts = capsule_probabilities(scenario, r, sigma, spec);
    DetectionReport report;
    report.p_rect = parts.rect;
    report.p_left = parts.left;
    report.p_right = parts.right;
    report.p_total = parts.total;
    report.quadrature_error_bound = parts.error_bound;
    report.n_sensors = n;
    report.p_d = detection_probability(parts.total, n);
    report.p_not_detected = n == 1 ? 1.0 - parts.total : not_detected_probability(parts.total, n);
    if (region && region->bounded() && capsule_inside(detection_capsule(scenario, r), *region))
        report.p_single_uniform = uniform_p_single(scenario, r, *region);
    return report;
}

}  // namespace hnwsn

#endif  // HNWSN_ANALYTIC_HPP
