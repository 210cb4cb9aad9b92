#ifndef HNWSN_COMMANDS_HPP
#define HNWSN_COMMANDS_HPP

// Subcommand bodies for the hnwsn tool. Each returns a process exit code:
// 0 success, 1 validation error, 2 numerical failure, 3 I/O failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "hnwsn/analytic.hpp"
#include "hnwsn/distributions.hpp"
#include "hnwsn/io.hpp"
#include "hnwsn/montecarlo.hpp"
#include "hnwsn/svg_plot.hpp"
#include "hnwsn/validate.hpp"

namespace hnwsn {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitNumerical = 2, kExitIo = 3 };

struct SampleArgs
{
    std::string model = "half_normal";
    double sigma = 1.0;
    std::size_t n = 0;
    std::uint64_t seed = 1;
    std::optional<Region> region;
    std::string output = "-";  ///< "-" writes to stdout
};

struct AnalyticArgs
{
    double s = 0.0;
    double d = 0.0;
    std::optional<double> max_permitted;
    double sigma = 1.0;
    double r = 1.0;
    std::size_t n = 1;
    std::optional<Region> region;
    double tolerance = 1e-8;
};

struct SimulateArgs
{
    std::string model = "half_normal";
    double sigma = 1.0;
    std::size_t n = 1;
    double s = 0.0;
    double d = 0.0;
    double r = 1.0;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    std::optional<Region> region;
    unsigned workers = 0;
    bool fixed_field = false;
};

struct SweepArgs
{
    std::string config_path;
    std::optional<std::string> output;  ///< overrides output_path from the config
    unsigned workers = 0;
};

struct PlotArgs
{
    std::string csv_path;
    PlotSpec spec;
    std::string output = "-";
};

namespace detail {

template <class Body>
int run_guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const QuadratureError& e) {
        err << "error: " << e.what() << " (best estimate " << format_number(e.best_estimate())
            << ", error bound " << format_number(e.error_bound()) << ")\n";
        return kExitNumerical;
    } catch (const SamplingError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

inline DeploymentModel make_model(const std::string& name, double sigma, const std::optional<Region>& region)
{
    DeploymentModel m{parse_deployment_kind(name), HalfNormalParams{sigma}, region.value_or(Region::half_plane())};
    m.validate();
    return m;
}

/// Writes text to path, or to out when path is "-".
inline void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

inline nlohmann::json json_number_or_null(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace detail

inline int cmd_sample(const SampleArgs& a, std::ostream& out, std::ostream& err)
{
    return detail::run_guarded(err, [&]() -> int {
        const DeploymentModel model = detail::make_model(a.model, a.sigma, a.region);
        const auto points = sample_deployment(model, a.n, RandomSeed{a.seed});
        std::ostringstream text;
        text << "x,y\n";
        for (const Point& p : points) text << format_number(p.x) << ',' << format_number(p.y) << '\n';
        detail::emit(a.output, text.str(), out);
        return kExitOk;
    });
}

inline nlohmann::json report_json(const DetectionReport& r)
{
    nlohmann::json j;
    j["p_rect"] = r.p_rect;
    j["p_left"] = r.p_left;
    j["p_right"] = r.p_right;
    j["p_total"] = r.p_total;
    j["p_uniform"] = detail::json_number_or_null(r.p_single_uniform);
    j["p_d"] = r.p_d;
    j["p_not_detected"] = r.p_not_detected;
    return j;
}

/// key=value lines followed by one JSON line with the same keys.
inline int cmd_analytic(const AnalyticArgs& a, std::ostream& out, std::ostream& err)
{
    return detail::run_guarded(err, [&]() -> int {
        const IntruderScenario scenario =
            a.max_permitted ? make_scenario(a.s, a.d, *a.max_permitted) : make_scenario(a.s, a.d);
        QuadratureSpec spec;
        spec.absolute_tolerance = a.tolerance;
        const DetectionReport r = full_report(scenario, a.r, a.sigma, a.n, a.region, spec);
        out << "p_rect=" << format_number(r.p_rect) << '\n'
            << "p_left=" << format_number(r.p_left) << '\n'
            << "p_right=" << format_number(r.p_right) << '\n'
            << "p_total=" << format_number(r.p_total) << '\n'
            << "p_uniform=" << format_optional(r.p_single_uniform) << '\n'
            << "p_d=" << format_number(r.p_d) << '\n'
            << "p_not_detected=" << format_number(r.p_not_detected) << '\n'
            << report_json(r).dump() << '\n';
        return kExitOk;
    });
}

inline int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err)
{
    return detail::run_guarded(err, [&]() -> int {
        const DeploymentModel model = detail::make_model(a.model, a.sigma, a.region);
        const IntruderScenario scenario = make_scenario(a.s, a.d);
        const DetectionEstimate e =
            a.fixed_field ? estimate_detection_fixed_field(model, a.n, scenario, a.r, a.trials, RandomSeed{a.seed})
                          : estimate_detection(model, a.n, scenario, a.r, a.trials, RandomSeed{a.seed}, a.workers);
        nlohmann::json j;
        j["p_hat"] = e.p_hat;
        j["ci_half_width"] = e.ci_half_width;
        j["trials"] = e.trials;
        j["detected_count"] = e.detected_count;
        j["seed"] = e.master_seed;
        out << "p_hat=" << format_number(e.p_hat) << '\n'
            << "ci_half_width=" << format_number(e.ci_half_width) << '\n'
            << "trials=" << e.trials << '\n'
            << "detected_count=" << e.detected_count << '\n'
            << "seed=" << e.master_seed << '\n'
            << j.dump() << '\n';
        return kExitOk;
    });
}

inline int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err)
{
    return detail::run_guarded(err, [&]() -> int {
        ExperimentConfig config = read_config_file(a.config_path);
        if (a.output) config.output_path = *a.output;
        const SweepResult result = sweep(config, a.workers);
        if (result.valid_rows() == 0) {
            err << "error: every sweep row is invalid\n";
            for (const auto& row : result.rows) err << "  " << row.status << '\n';
            return static_cast<int>(kExitValidation);
        }
        std::ostringstream csv, status;
        write_sweep_csv(csv, result);
        write_status_csv(status, result);
        detail::emit(config.output_path, csv.str(), out);
        if (config.output_path != "-") detail::emit(status_path_for(config.output_path), status.str(), out);
        const std::size_t invalid = result.rows.size() - result.valid_rows();
        err << "sweep: " << result.rows.size() << " rows (" << invalid << " invalid) -> " << config.output_path
            << '\n';
        return static_cast<int>(kExitOk);
    });
}

inline int cmd_plot(const PlotArgs& a, std::ostream& out, std::ostream& err)
{
    return detail::run_guarded(err, [&]() -> int {
        const CsvTable table = read_csv_file(a.csv_path);
        const std::string svg = render_svg(table, a.spec);
        detail::emit(a.output, svg, out);
        return kExitOk;
    });
}

inline int cmd_validate(const ValidationOptions& opt, std::ostream& out, std::ostream& err)
{
    return detail::run_guarded(err, [&]() -> int {
        const auto checks = run_validation(opt);
        bool all = true;
        for (const auto& c : checks) {
            out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
            all = all && c.passed;
        }
        out << (all ? "all checks passed" : "some checks failed") << '\n';
        return all ? kExitOk : kExitValidation;
    });
}

}  // namespace hnwsn

#endif  // HNWSN_COMMANDS_HPP
