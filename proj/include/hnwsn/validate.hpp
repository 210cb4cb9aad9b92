#ifndef HNWSN_VALIDATE_HPP
#define HNWSN_VALIDATE_HPP

// Built-in self checks run by `hnwsn validate`: density normalisations,
// sampler moments, Stein residuals, the separable p_rect identity and a
// reduced-size analytic/Monte Carlo comparison.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "hnwsn/analytic.hpp"
#include "hnwsn/distributions.hpp"
#include "hnwsn/montecarlo.hpp"
#include "hnwsn/quadrature.hpp"
#include "hnwsn/stats.hpp"

namespace hnwsn {

struct ValidationOptions
{
    /// Test hook: scales the half-normal density by 1.01 in the
    /// normalisation check, which must then fail.
    bool corrupt_normalizer = false;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 20240601;
    unsigned workers = 0;
};

struct CheckResult
{
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline std::string sci(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body)
{
    try {
        return body();
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

}  // namespace detail

inline std::vector<CheckResult> run_validation(const ValidationOptions& opt = {})
{
    using detail::sci;
    std::vector<CheckResult> out;
    QuadratureSpec tight;
    tight.absolute_tolerance = 1e-10;

    out.push_back(detail::guarded("half_normal_pdf normalisation", [&] {
        const double scale = opt.corrupt_normalizer ? 1.01 : 1.0;
        double worst = 0.0;
        for (double sigma : {0.5, 1.0, 5.0, 20.0}) {
            auto f = [&](double y) { return scale * half_normal_pdf(y, {sigma}); };
            worst = std::max(worst, std::fabs(integrate_1d(f, 0.0, 12.0 * sigma, tight).value - 1.0));
        }
        return CheckResult{"half_normal_pdf normalisation", worst <= 1e-6, "max |integral - 1| = " + sci(worst)};
    }));

    out.push_back(detail::guarded("half_normal_cdf vs quadrature", [&] {
        double worst = 0.0;
        for (double y = 0.25; y <= 6.0; y += 0.25) {
            auto f = [](double t) { return half_normal_pdf(t, {1.0}); };
            worst = std::max(worst, std::fabs(integrate_1d(f, 0.0, y, tight).value - half_normal_cdf(y, {1.0})));
        }
        return CheckResult{"half_normal_cdf vs quadrature", worst <= 1e-7, "max abs diff = " + sci(worst)};
    }));

    out.push_back(detail::guarded("bivariate half-normal normalisation", [&] {
        double worst = 0.0;
        QuadratureSpec s;
        s.absolute_tolerance = 1e-7;
        for (Correlated2DParams p : {Correlated2DParams{1, 1, 0}, {1, 2, 0.5}, {2, 1, -0.5}}) {
            auto f = [&](double x, double y) { return correlated_half_normal_pdf(x, y, p); };
            const double v = integrate_2d(f, {0.0, 12.0 * p.sigma1}, std::pair{0.0, 12.0 * p.sigma2}, s).value;
            worst = std::max(worst, std::fabs(v - 1.0));
        }
        return CheckResult{"bivariate half-normal normalisation", worst <= 1e-4, "max |integral - 1| = " + sci(worst)};
    }));

    out.push_back(detail::guarded("half-plane density normalisation", [&] {
        auto f = [](double x, double y) { return halfplane_pdf(x, y, {1.0}); };
        const double v = integrate_2d(f, {0.0, 12.0}, std::pair{-12.0, 12.0}).value;
        return CheckResult{"half-plane density normalisation", std::fabs(v - 1.0) <= 1e-6,
                           "|integral - 1| = " + sci(std::fabs(v - 1.0))};
    }));

    std::vector<double> draws(opt.trials);
    {
        Rng rng(derive_trial_seed(opt.seed, 1));
        for (double& d : draws) d = half_normal_sample(rng, {1.0});
    }

    out.push_back(detail::guarded("sampler mean", [&] {
        const auto m = sample_moments(draws);
        const double target = half_normal_mean({1.0});
        const double se = std::sqrt(1.0 - 2.0 / std::numbers::pi) / std::sqrt(static_cast<double>(draws.size()));
        const double dev = std::fabs(m.mean - target);
        return CheckResult{"sampler mean", dev <= 5.0 * se, "|mean - sigma sqrt(2/pi)| = " + sci(dev) +
                                                               ", 5 SE = " + sci(5.0 * se)};
    }));

    out.push_back(detail::guarded("sampler KS distance", [&] {
        const std::span<const double> head(draws.data(), std::min<std::size_t>(draws.size(), 10000));
        const double ks = kolmogorov_distance(head, [](double y) { return half_normal_cdf(y, {1.0}); });
        const double crit = ks_critical_001(head.size());
        return CheckResult{"sampler KS distance", ks <= crit, "D = " + sci(ks) + ", critical(0.01) = " + sci(crit)};
    }));

    out.push_back(detail::guarded("Stein residual f(x)=x", [&] {
        const auto st = stein_statistic(SteinFunction::Identity, draws, {1.0});
        return CheckResult{"Stein residual f(x)=x", std::fabs(st.residual) <= 5.0 * st.standard_error,
                           "residual = " + sci(st.residual) + ", SE = " + sci(st.standard_error)};
    }));

    out.push_back(detail::guarded("Stein negative control (uniform)", [&] {
        std::vector<double> u(draws.size());
        Rng rng(derive_trial_seed(opt.seed, 2));
        for (double& v : u) v = rng.uniform();
        const auto st = stein_statistic(SteinFunction::Identity, u, {1.0});
        return CheckResult{"Stein negative control (uniform)", std::fabs(st.residual) > 5.0 * st.standard_error,
                           "residual = " + sci(st.residual) + ", SE = " + sci(st.standard_error)};
    }));

    out.push_back(detail::guarded("p_rect separable identity", [&] {
        double worst = 0.0;
        for (double s : {1.0, 4.0, 9.0})
            for (double sigma : {1.0, 5.0})
                for (double r : {0.5, 2.0}) {
                    const auto sc = make_scenario(s, s / 2);
                    worst = std::max(worst, std::fabs(p_rect(sc, r, sigma) - p_rect_separable(sc, r, sigma)));
                }
        return CheckResult{"p_rect separable identity", worst <= 1e-7, "max abs diff = " + sci(worst)};
    }));

    out.push_back(detail::guarded("analytic vs Monte Carlo", [&] {
        const auto sc = make_scenario(5.0, 3.0);
        const double pd = full_report(sc, 1.0, 5.0, 10).p_d;
        const DeploymentModel model{DeploymentKind::HalfPlaneHalfNormal, {5.0}, Region::half_plane()};
        const auto est = estimate_detection(model, 10, sc, 1.0, opt.trials, RandomSeed{opt.seed}, opt.workers);
        const double tol = std::max(0.005, 3.0 * est.ci_half_width);
        const double dev = std::fabs(est.p_hat - pd);
        return CheckResult{"analytic vs Monte Carlo", dev <= tol,
                           "p_d = " + sci(pd) + ", p_hat = " + sci(est.p_hat) + ", tolerance = " + sci(tol)};
    }));

    out.push_back(detail::guarded("worker-count determinism", [&] {
        const auto sc = make_scenario(5.0, 3.0);
        const DeploymentModel model{DeploymentKind::HalfPlaneHalfNormal, {5.0}, Region::half_plane()};
        const auto a = estimate_detection(model, 10, sc, 1.0, 20000, RandomSeed{opt.seed}, 1);
        const auto b = estimate_detection(model, 10, sc, 1.0, 20000, RandomSeed{opt.seed}, 4);
        return CheckResult{"worker-count determinism", a.detected_count == b.detected_count,
                           std::to_string(a.detected_count) + " vs " + std::to_string(b.detected_count)};
    }));

    return out;
}

}  // namespace hnwsn

#endif  // HNWSN_VALIDATE_HPP
