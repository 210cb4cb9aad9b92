// hnwsn: sensor deployment and intrusion detection analysis.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hnwsn/commands.hpp"

namespace {

hnwsn::Region parse_region(const std::string& text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw std::invalid_argument("--region: '" + cell + "' is not a number");
        }
    }
    if (v.size() != 4) throw std::invalid_argument("--region expects x_min,x_max,y_min,y_max");
    return hnwsn::Region::rectangle(v[0], v[1], v[2], v[3]);
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace hnwsn;
    CLI::App app{"Half-normal sensor deployment: detection probability analysis"};
    app.require_subcommand(1);

    std::string region_text;

    SampleArgs sample;
    auto* c_sample = app.add_subcommand("sample", "Draw sensor positions and write them as CSV (x,y)");
    c_sample->add_option("--model", sample.model, "uniform | half_normal | strip_half_normal | quadrant_half_normal")
        ->capture_default_str();
    c_sample->add_option("--sigma", sample.sigma, "Half-normal scale")->capture_default_str();
    c_sample->add_option("-n,--n", sample.n, "Number of sensors")->required();
    c_sample->add_option("--seed", sample.seed, "Master seed")->capture_default_str();
    c_sample->add_option("--region", region_text, "Rectangle x_min,x_max,y_min,y_max");
    c_sample->add_option("-o,--output", sample.output, "Output CSV path, '-' for stdout")->capture_default_str();

    AnalyticArgs analytic;
    double analytic_dmax = -1.0;
    auto* c_analytic = app.add_subcommand("analytic", "Evaluate the analytic detection probability");
    c_analytic->add_option("--S", analytic.s, "Intruder entry abscissa")->required();
    c_analytic->add_option("--d", analytic.d, "Distance travelled toward the target")->required();
    c_analytic->add_option("--D", analytic_dmax, "Maximum permitted distance (defaults to S)");
    c_analytic->add_option("--sigma", analytic.sigma, "Half-normal scale")->required();
    c_analytic->add_option("--r", analytic.r, "Sensing range")->required();
    c_analytic->add_option("--N", analytic.n, "Number of sensors")->required();
    c_analytic->add_option("--region", region_text, "Rectangle for the uniform baseline");
    c_analytic->add_option("--tol", analytic.tolerance, "Quadrature absolute tolerance")->capture_default_str();

    SimulateArgs simulate;
    auto* c_simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the detection probability");
    c_simulate->add_option("--model", simulate.model, "Deployment model")->capture_default_str();
    c_simulate->add_option("--sigma", simulate.sigma, "Half-normal scale")->capture_default_str();
    c_simulate->add_option("--N", simulate.n, "Number of sensors")->required();
    c_simulate->add_option("--S", simulate.s, "Intruder entry abscissa")->required();
    c_simulate->add_option("--d", simulate.d, "Distance travelled toward the target")->required();
    c_simulate->add_option("--r", simulate.r, "Sensing range")->required();
    c_simulate->add_option("--trials", simulate.trials, "Number of trials")->capture_default_str();
    c_simulate->add_option("--seed", simulate.seed, "Master seed")->capture_default_str();
    c_simulate->add_option("--region", region_text, "Rectangle x_min,x_max,y_min,y_max");
    c_simulate->add_option("--workers", simulate.workers, "Worker threads (0 = all cores)")->capture_default_str();
    c_simulate->add_flag("--fixed-field", simulate.fixed_field, "Keep one sensor field for all trials");

    SweepArgs sweep_args;
    std::string sweep_output;
    auto* c_sweep = app.add_subcommand("sweep", "Run a parameter sweep from a JSON config");
    c_sweep->add_option("config", sweep_args.config_path, "Experiment config (JSON)")->required();
    c_sweep->add_option("-o,--output", sweep_output, "Override output_path from the config");
    c_sweep->add_option("--workers", sweep_args.workers, "Worker threads (0 = all cores)")->capture_default_str();

    PlotArgs plot;
    std::string y_columns = "p_hat";
    auto* c_plot = app.add_subcommand("plot", "Render a sweep CSV as an SVG line chart");
    c_plot->add_option("csv", plot.csv_path, "Input CSV")->required();
    c_plot->add_option("--x", plot.spec.x_column, "X column")->capture_default_str();
    c_plot->add_option("--y", y_columns, "Comma-separated Y columns")->capture_default_str();
    c_plot->add_option("--series", plot.spec.series_key, "Column whose values split the series")
        ->capture_default_str();
    c_plot->add_option("--title", plot.spec.title, "Chart title");
    c_plot->add_option("--xlabel", plot.spec.x_label, "X axis label");
    c_plot->add_option("--ylabel", plot.spec.y_label, "Y axis label");
    c_plot->add_option("--width", plot.spec.width, "Width in pixels")->capture_default_str();
    c_plot->add_option("--height", plot.spec.height, "Height in pixels")->capture_default_str();
    c_plot->add_option("-o,--output", plot.output, "Output SVG path, '-' for stdout")->capture_default_str();

    ValidationOptions validation;
    auto* c_validate = app.add_subcommand("validate", "Run the built-in self checks");
    c_validate->add_option("--trials", validation.trials, "Monte Carlo draws per check")->capture_default_str();
    c_validate->add_option("--workers", validation.workers, "Worker threads (0 = all cores)");
    c_validate->add_flag("--inject-normalizer-fault", validation.corrupt_normalizer)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    std::optional<Region> region;
    try {
        if (!region_text.empty()) region = parse_region(region_text);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    if (*c_sample) {
        sample.region = region;
        return cmd_sample(sample, std::cout, std::cerr);
    }
    if (*c_analytic) {
        analytic.region = region;
        if (analytic_dmax >= 0.0) analytic.max_permitted = analytic_dmax;
        return cmd_analytic(analytic, std::cout, std::cerr);
    }
    if (*c_simulate) {
        simulate.region = region;
        return cmd_simulate(simulate, std::cout, std::cerr);
    }
    if (*c_sweep) {
        if (!sweep_output.empty()) sweep_args.output = sweep_output;
        return cmd_sweep(sweep_args, std::cout, std::cerr);
    }
    if (*c_plot) {
        plot.spec.y_columns = split_list(y_columns);
        return cmd_plot(plot, std::cout, std::cerr);
    }
    if (*c_validate) return cmd_validate(validation, std::cout, std::cerr);
    return kExitValidation;
}
