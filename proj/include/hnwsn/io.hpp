#ifndef HNWSN_IO_HPP
#define HNWSN_IO_HPP

// Text formats: number formatting, the sweep CSV, a small CSV reader, and the
// JSON experiment configuration.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "json.hpp"

#include "hnwsn/montecarlo.hpp"

namespace hnwsn {

class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// 10 significant digits, '.' separator, no grouping.
inline std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string format_optional(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string{};
}

inline constexpr std::string_view kSweepHeader = "model,sigma,N,S,d,r,trials,p_analytic,p_hat,ci_half_width,seed";

inline void write_sweep_csv(std::ostream& out, const SweepResult& result)
{
    out << kSweepHeader << '\n';
    for (const SweepRow& row : result.rows) {
        out << to_string(row.model) << ',' << format_optional(row.sigma) << ',' << row.n << ','
            << format_number(row.s) << ',' << format_number(row.d) << ',' << format_number(row.r) << ','
            << row.trials << ',' << format_optional(row.p_analytic) << ',' << format_optional(row.p_hat) << ','
            << format_optional(row.ci_half_width) << ',' << row.seed << '\n';
    }
}

/// Sidecar next to the sweep CSV: one status line per data row.
inline void write_status_csv(std::ostream& out, const SweepResult& result)
{
    out << "row,status\n";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        std::string status = result.rows[i].status;
        for (char& c : status)
            if (c == ',' || c == '\n') c = ';';
        out << (i + 1) << ',' << status << '\n';
    }
}

inline std::string status_path_for(const std::string& csv_path) { return csv_path + ".status.csv"; }

// --- CSV reading ---------------------------------------------------------------

struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::optional<std::size_t> column(std::string_view name) const
    {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        return std::nullopt;
    }
};

namespace detail {
inline std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> out;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            out.push_back(std::move(cell));
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    out.push_back(std::move(cell));
    return out;
}
}  // namespace detail

/// Plain comma-separated text without quoting, as written by this tool.
inline CsvTable parse_csv(std::istream& in)
{
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("csv: empty input, no header");
    table.header = detail::split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != table.header.size())
            throw ConfigError("csv: row " + std::to_string(table.rows.size() + 1) + " has " +
                              std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(table.header.size()));
        table.rows.push_back(std::move(cells));
    }
    return table;
}

inline CsvTable read_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return parse_csv(in);
}

// --- experiment configuration ---------------------------------------------------

namespace detail {

template <class T>
std::vector<T> json_list(const nlohmann::json& j, const char* key)
{
    if (!j.is_array()) throw ConfigError(std::string("config: '") + key + "' must be an array");
    std::vector<T> out;
    for (const auto& v : j) {
        if constexpr (std::is_same_v<T, std::size_t>) {
            if (!v.is_number_unsigned())
                throw ConfigError(std::string("config: '") + key + "' must hold nonnegative integers");
        } else {
            if (!v.is_number()) throw ConfigError(std::string("config: '") + key + "' must hold numbers");
        }
        out.push_back(v.get<T>());
    }
    return out;
}

}  // namespace detail

/// Parses and validates an ExperimentConfig. Every key except
/// quadrature_tolerance is required; unknown keys are rejected.
inline ExperimentConfig parse_config(const nlohmann::json& j)
{
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    static const char* const known[] = {"models",  "sigma_values", "n_values", "s_values",
                                        "d_values", "r_values",    "region",   "trials",
                                        "master_seed", "quadrature_tolerance", "output_path"};
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) throw ConfigError("config: unknown key '" + item.key() + "'");
    }
    for (const char* k : known) {
        if (std::string_view(k) == "quadrature_tolerance") continue;
        if (!j.contains(k)) throw ConfigError(std::string("config: missing key '") + k + "'");
    }

    ExperimentConfig c;
    try {
        if (!j["models"].is_array()) throw ConfigError("config: 'models' must be an array");
        for (const auto& m : j["models"]) {
            if (!m.is_string()) throw ConfigError("config: 'models' entries must be strings");
            c.models.push_back(parse_deployment_kind(m.get<std::string>()));
        }
        c.sigma_values = detail::json_list<double>(j["sigma_values"], "sigma_values");
        c.n_values = detail::json_list<std::size_t>(j["n_values"], "n_values");
        c.s_values = detail::json_list<double>(j["s_values"], "s_values");
        c.d_values = detail::json_list<double>(j["d_values"], "d_values");
        c.r_values = detail::json_list<double>(j["r_values"], "r_values");

        const auto& reg = j["region"];
        if (!reg.is_object()) throw ConfigError("config: 'region' must be an object");
        for (const auto& item : reg.items()) {
            const auto& k = item.key();
            if (k != "x_min" && k != "x_max" && k != "y_min" && k != "y_max")
                throw ConfigError("config: unknown region key '" + k + "'");
            if (!item.value().is_number()) throw ConfigError("config: region bounds must be numbers");
        }
        for (const char* k : {"x_min", "x_max", "y_min", "y_max"})
            if (!reg.contains(k)) throw ConfigError(std::string("config: region is missing '") + k + "'");
        c.region = Region::rectangle(reg["x_min"].get<double>(), reg["x_max"].get<double>(),
                                     reg["y_min"].get<double>(), reg["y_max"].get<double>());

        if (!j["trials"].is_number_unsigned()) throw ConfigError("config: 'trials' must be a nonnegative integer");
        c.trials = j["trials"].get<std::uint64_t>();
        if (!j["master_seed"].is_number_unsigned())
            throw ConfigError("config: 'master_seed' must be a nonnegative integer");
        c.master_seed = j["master_seed"].get<std::uint64_t>();
        if (j.contains("quadrature_tolerance")) {
            if (!j["quadrature_tolerance"].is_number())
                throw ConfigError("config: 'quadrature_tolerance' must be a number");
            c.quadrature_tolerance = j["quadrature_tolerance"].get<double>();
        }
        if (!j["output_path"].is_string()) throw ConfigError("config: 'output_path' must be a string");
        c.output_path = j["output_path"].get<std::string>();
        c.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

inline ExperimentConfig read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

}  // namespace hnwsn

#endif  // HNWSN_IO_HPP
