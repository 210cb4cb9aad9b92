#ifndef HNWSN_MONTECARLO_HPP
#define HNWSN_MONTECARLO_HPP

// Monte Carlo estimate of the detection probability.
//
// Trial i redraws the whole sensor field from the stream seeded with
// derive_trial_seed(master, i) and reports whether any sensor is within
// sensing range of the intruder path. Trials are split into contiguous index
// blocks across workers and only integer hit counts are summed, so the result
// does not depend on the number of workers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hnwsn/analytic.hpp"
#include "hnwsn/distributions.hpp"
#include "hnwsn/geometry.hpp"
#include "hnwsn/rng.hpp"

namespace hnwsn {

struct DetectionEstimate
{
    double p_hat = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t detected_count = 0;
    double ci_half_width = 0.0;  ///< 95% normal approximation
    std::uint64_t master_seed = 0;
};

inline constexpr double kZ95 = 1.96;

inline DetectionEstimate make_estimate(std::uint64_t detected, std::uint64_t trials, std::uint64_t seed)
{
    DetectionEstimate e;
    e.trials = trials;
    e.detected_count = detected;
    e.master_seed = seed;
    e.p_hat = static_cast<double>(detected) / static_cast<double>(trials);
    e.ci_half_width = kZ95 * std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
    return e;
}

namespace detail {

inline bool trial_with_rng(const DeploymentModel& model, std::size_t n, const IntruderScenario& scenario, double r,
                           Rng& rng)
{
    for (std::size_t i = 0; i < n; ++i) {
        if (detects(sample_position(model, rng), scenario, r)) return true;
    }
    return false;
}

inline void check_trial_inputs(const DeploymentModel& model, const IntruderScenario& scenario, double r)
{
    model.validate();
    scenario.validate();
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("sensing range r must be finite and > 0");
}

inline unsigned resolve_workers(unsigned workers)
{
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    return workers;
}

}  // namespace detail

inline bool run_trial(const DeploymentModel& model, std::size_t n, const IntruderScenario& scenario, double r,
                      std::uint64_t trial_seed)
{
    detail::check_trial_inputs(model, scenario, r);
    Rng rng(trial_seed);
    return detail::trial_with_rng(model, n, scenario, r, rng);
}

/// workers == 0 picks the hardware concurrency.
inline DetectionEstimate estimate_detection(const DeploymentModel& model, std::size_t n,
                                            const IntruderScenario& scenario, double r, std::uint64_t trials,
                                            RandomSeed seed, unsigned workers = 0)
{
    detail::check_trial_inputs(model, scenario, r);
    if (trials == 0) throw std::invalid_argument("estimate_detection: trials must be >= 1");
    workers = static_cast<unsigned>(std::min<std::uint64_t>(detail::resolve_workers(workers), trials));

    auto count_block = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            Rng rng(derive_trial_seed(seed.master, i));
            hits += detail::trial_with_rng(model, n, scenario, r, rng) ? 1 : 0;
        }
        return hits;
    };

    std::uint64_t detected = 0;
    if (workers <= 1) {
        detected = count_block(0, trials);
    } else {
        std::vector<std::uint64_t> hits(workers, 0);
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = trials * w / workers;
            const std::uint64_t end = trials * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] {
                try {
                    hits[w] = count_block(begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
        for (auto h : hits) detected += h;
    }
    return make_estimate(detected, trials, seed.master);
}

/// Exploration mode: one field drawn from derive_trial_seed(master, 0) is kept
/// for every trial. With a fixed straight-line intruder the outcome is the same
/// in every trial, so this reports the conditional detection of that field.
inline DetectionEstimate estimate_detection_fixed_field(const DeploymentModel& model, std::size_t n,
                                                        const IntruderScenario& scenario, double r,
                                                        std::uint64_t trials, RandomSeed seed)
{
    detail::check_trial_inputs(model, scenario, r);
    if (trials == 0) throw std::invalid_argument("estimate_detection: trials must be >= 1");
    const auto field = sample_deployment(model, n, RandomSeed{derive_trial_seed(seed.master, 0)});
    const bool hit = std::any_of(field.begin(), field.end(), [&](Point p) { return detects(p, scenario, r); });
    return make_estimate(hit ? trials : 0, trials, seed.master);
}

// --- sweeps -----------------------------------------------------------------

struct ExperimentConfig
{
    std::vector<DeploymentKind> models;
    std::vector<double> sigma_values;
    std::vector<std::size_t> n_values;
    std::vector<double> s_values;
    std::vector<double> d_values;
    std::vector<double> r_values;
    Region region = Region::rectangle(0.0, 100.0, -50.0, 50.0);
    std::uint64_t trials = 10000;
    std::uint64_t master_seed = 1;
    double quadrature_tolerance = 1e-8;
    std::string output_path = "sweep.csv";

    /// Rejects out-of-domain single values. Cross-list combinations such as
    /// d > S are left to the per-row status.
    void validate() const
    {
        auto nonempty = [](bool empty, const char* name) {
            if (empty) throw std::invalid_argument(std::string("config: ") + name + " must be nonempty");
        };
        nonempty(models.empty(), "models");
        nonempty(sigma_values.empty(), "sigma_values");
        nonempty(n_values.empty(), "n_values");
        nonempty(s_values.empty(), "s_values");
        nonempty(d_values.empty(), "d_values");
        nonempty(r_values.empty(), "r_values");
        for (double s : sigma_values)
            if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("config: sigma values must be > 0");
        for (double s : s_values)
            if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("config: S values must be >= 0");
        for (double d : d_values)
            if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("config: d values must be >= 0");
        for (double r : r_values)
            if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("config: r values must be > 0");
        if (trials == 0) throw std::invalid_argument("config: trials must be >= 1");
        if (!region.bounded()) throw std::invalid_argument("config: region must be a rectangle");
        if (!(quadrature_tolerance > 0.0)) throw std::invalid_argument("config: quadrature_tolerance must be > 0");
        if (output_path.empty()) throw std::invalid_argument("config: output_path must be nonempty");
    }
};

struct SweepRow
{
    DeploymentKind model = DeploymentKind::UniformRect;
    std::optional<double> sigma;  ///< absent for uniform deployment
    std::size_t n = 0;
    double s = 0.0;
    double d = 0.0;
    double r = 0.0;
    std::uint64_t trials = 0;
    std::optional<double> p_analytic;
    std::optional<double> p_hat;
    std::optional<double> ci_half_width;
    std::uint64_t seed = 0;
    std::string status = "ok";

    bool valid() const noexcept { return p_hat.has_value(); }
};

struct SweepResult
{
    std::vector<SweepRow> rows;

    std::size_t valid_rows() const
    {
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.valid(); }));
    }
};

/// Analytic value for a row, where the model has one: the half-plane formula
/// for half_normal, capsule-area ratio for uniform (contained capsules only).
inline std::optional<double> analytic_for(DeploymentKind kind, std::optional<double> sigma, std::size_t n,
                                          const IntruderScenario& scenario, double r, const Region& region,
                                          const QuadratureSpec& spec, std::string& status)
{
    switch (kind) {
    case DeploymentKind::HalfPlaneHalfNormal:
        try {
            return full_report(scenario, r, *sigma, n, std::nullopt, spec).p_d;
        } catch (const QuadratureError& e) {
            status = std::string("analytic unavailable: ") + e.what();
            return std::nullopt;
        }
    case DeploymentKind::UniformRect:
        if (!capsule_inside(detection_capsule(scenario, r), region)) {
            status = "ok; analytic unavailable: capsule not contained in region";
            return std::nullopt;
        }
        return detection_probability(uniform_p_single(scenario, r, region), n);
    case DeploymentKind::StripHalfNormal:
    case DeploymentKind::QuadrantHalfNormal: return std::nullopt;
    }
    return std::nullopt;
}

/// Cartesian sweep. Rows are ordered by model kind, then N, then S, d, sigma
/// and r in configuration order. Every row uses the master seed, so curves
/// share random numbers across N and each row can be replayed on its own.
inline SweepResult sweep(const ExperimentConfig& config, unsigned workers = 0)
{
    config.validate();

    std::vector<DeploymentKind> models = config.models;
    std::sort(models.begin(), models.end());
    models.erase(std::unique(models.begin(), models.end()), models.end());
    std::vector<std::size_t> ns = config.n_values;
    std::stable_sort(ns.begin(), ns.end());

    QuadratureSpec spec;
    spec.absolute_tolerance = config.quadrature_tolerance;

    SweepResult result;
    for (DeploymentKind kind : models) {
        std::vector<std::optional<double>> sigmas;
        if (kind == DeploymentKind::UniformRect)
            sigmas.push_back(std::nullopt);
        else
            sigmas.assign(config.sigma_values.begin(), config.sigma_values.end());

        for (std::size_t n : ns)
            for (double s : config.s_values)
                for (double d : config.d_values)
                    for (const auto& sigma : sigmas)
                        for (double r : config.r_values) {
                            SweepRow row;
                            row.model = kind;
                            row.sigma = sigma;
                            row.n = n;
                            row.s = s;
                            row.d = d;
                            row.r = r;
                            row.trials = config.trials;
                            row.seed = config.master_seed;
                            if (d > s) {
                                row.status = "invalid: d exceeds S";
                                result.rows.push_back(std::move(row));
                                continue;
                            }
                            const IntruderScenario scenario = make_scenario(s, d);
                            DeploymentModel model{kind, HalfNormalParams{sigma.value_or(1.0)}, config.region};
                            try {
                                const auto est = estimate_detection(model, n, scenario, r, config.trials,
                                                                    RandomSeed{config.master_seed}, workers);
                                row.p_hat = est.p_hat;
                                row.ci_half_width = est.ci_half_width;
                            } catch (const SamplingError& e) {
                                row.status = std::string("invalid: ") + e.what();
                                result.rows.push_back(std::move(row));
                                continue;
                            }
                            row.p_analytic = analytic_for(kind, sigma, n, scenario, r, config.region, spec, row.status);
                            result.rows.push_back(std::move(row));
                        }
    }
    return result;
}

}  // namespace hnwsn

#endif  // HNWSN_MONTECARLO_HPP
