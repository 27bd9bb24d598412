// seroinv: vaccine coverage, exposure and seroconversion from 8-cell
// antibody-status counts.
//
// Exit codes: 0 all rows estimated (gate flags allowed), 2 some row failed,
// 1 I/O, schema or usage failure.

#include "seroinv/seroinv.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace seroinv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitRowErrors = 2;

struct CommonArgs {
    std::string input;
    std::string format;
    std::string output;
    std::string emit;
    std::string config;
    int precision = -1;
};

struct Settings {
    std::optional<DataFormat> format;
    int precision = kDefaultPrecision;
    bool csv = false;
    bool oracle = false;
};

// Flags override the config file, which overrides built-in defaults.
Settings resolve(const CommonArgs& args, bool oracle_flag) {
    const auto cfg = resolve_config(args.config.empty() ? std::nullopt : std::optional<fs::path>(args.config));
    Settings s;
    if (!args.format.empty()) {
        s.format = parse_format(args.format);
    } else if (cfg.format) {
        s.format = parse_format(*cfg.format);
    }
    s.precision = args.precision >= 0 ? args.precision : cfg.precision.value_or(kDefaultPrecision);
    const std::string emit = !args.emit.empty() ? args.emit : cfg.emit.value_or("table");
    s.csv = emit == "csv";
    s.oracle = oracle_flag || cfg.oracle.value_or(false);
    return s;
}

DataFormat format_for(const Settings& s, const fs::path& path) { return s.format.value_or(format_from_path(path)); }

void add_common(CLI::App* cmd, CommonArgs& args, bool takes_input, const std::string& output_help) {
    if (takes_input) {
        cmd->add_option("--input", args.input, "Cohort dataset (CSV or JSON)")->required();
        cmd->add_option("--format", args.format, "Input format: csv or json (default: from extension)")
            ->check(CLI::IsMember({"csv", "json"}));
    } else {
        cmd->add_option("--format", args.format, "Parameter file format: csv or json (default: from extension)")
            ->check(CLI::IsMember({"csv", "json"}));
    }
    cmd->add_option("--output", args.output, output_help);
    cmd->add_option("--precision", args.precision, "Decimal places (default 3)")->check(CLI::Range(0, 17));
    cmd->add_option("--emit", args.emit, "stdout rendering: table or csv")->check(CLI::IsMember({"table", "csv"}));
    cmd->add_option("--config", args.config, std::string("key=value defaults file (else $") + kConfigEnvVar + ")");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DatasetError(DatasetError::Kind::Io, 0, "cannot write '" + path + "'");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form estimation of multivalent vaccine coverage from antibody-status counts"};
    app.require_subcommand(1);

    CommonArgs est_args, val_args, rec_args, sim_args;
    bool oracle = false;
    int fit_restarts = FitConfig{}.restarts;
    std::uint64_t fit_seed = FitConfig{}.seed;
    std::string params_path;
    std::uint64_t n = 0;
    int replicates = 100;
    std::uint64_t seed = 1;

    auto* est = app.add_subcommand("estimate", "Closed-form estimates with validity gates");
    add_common(est, est_args, true, "Also write CSV results to this file");
    est->add_flag("--oracle", oracle, "Add a numerical fit for comparison");
    est->add_option("--fit-restarts", fit_restarts, "Restarts for --oracle")->check(CLI::PositiveNumber);
    est->add_option("--seed", fit_seed, "Seed for --oracle restarts");

    auto* val = app.add_subcommand("validate", "Validity gates only, no estimates");
    add_common(val, val_args, true, "Also write CSV results to this file");

    auto* rec = app.add_subcommand("reconstruct", "Expected counts from closed-form or supplied parameters");
    add_common(rec, rec_args, true, "Also write CSV results to this file");
    rec->add_option("--params", params_path, "Parameter file (label,v,e1,e2,e3,s1,s2,s3); default closed form");

    auto* sim = app.add_subcommand("simulate", "Sample synthetic cohorts and summarise estimator recovery");
    add_common(sim, sim_args, false, "Write the sampled cohorts as a dataset CSV");
    sim->add_option("--params", params_path, "Parameter file (label,v,e1,e2,e3,s1,s2,s3)")->required();
    sim->add_option("--n", n, "Cohort size")->required()->check(CLI::PositiveNumber);
    sim->add_option("--replicates", replicates, "Replicates per parameter row")->check(CLI::PositiveNumber);
    sim->add_option("--seed", seed, "First seed; replicate r uses seed + r");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitFailure;
    }

    try {
        if (est->parsed()) {
            const auto s = resolve(est_args, oracle);
            const auto data = load_dataset(est_args.input, format_for(s, est_args.input));
            EstimateOptions opt;
            opt.oracle = s.oracle;
            opt.fit.restarts = fit_restarts;
            opt.fit.seed = fit_seed;
            const auto report = run_estimate(data, opt);
            if (s.csv) {
                render_estimate_csv(std::cout, report, s.precision);
            } else {
                render_estimate_table(std::cout, report, s.precision);
            }
            if (!est_args.output.empty()) {
                auto out = open_output(est_args.output);
                render_estimate_csv(out, report, s.precision);
            }
            return report.any_error() ? kExitRowErrors : kExitOk;
        }
        if (val->parsed()) {
            const auto s = resolve(val_args, false);
            const auto rows = run_validate(load_dataset(val_args.input, format_for(s, val_args.input)));
            render_validate(std::cout, rows, s.csv);
            if (!val_args.output.empty()) {
                auto out = open_output(val_args.output);
                render_validate(out, rows, true);
            }
            return kExitOk;
        }
        if (rec->parsed()) {
            const auto s = resolve(rec_args, false);
            const auto data = load_dataset(rec_args.input, format_for(s, rec_args.input));
            std::optional<std::vector<ParamRecord>> external;
            if (!params_path.empty()) external = load_params(params_path, format_from_path(params_path));
            const auto rows = run_reconstruct(data, external ? &*external : nullptr);
            render_reconstruct(std::cout, rows, s.precision, s.csv);
            if (!rec_args.output.empty()) {
                auto out = open_output(rec_args.output);
                render_reconstruct(out, rows, s.precision, true);
            }
            bool any_error = false;
            for (const auto& r : rows) any_error = any_error || r.error.has_value();
            return any_error ? kExitRowErrors : kExitOk;
        }
        if (sim->parsed()) {
            const auto s = resolve(sim_args, false);
            const auto params = load_params(params_path, format_for(s, params_path));
            const auto result = run_simulate(params, {n, replicates, seed});
            render_simulation(std::cout, result, s.precision, s.csv);
            if (!sim_args.output.empty()) {
                std::vector<CohortRecord> cohorts;
                for (const auto& r : result.replicates) cohorts.push_back(r.cohort);
                auto out = open_output(sim_args.output);
                write_dataset_csv(out, cohorts);
            }
            bool any_error = false;
            for (const auto& r : result.replicates) any_error = any_error || r.estimate.error.has_value();
            return any_error ? kExitRowErrors : kExitOk;
        }
    } catch (const DatasetError& e) {
        std::cerr << "seroinv: " << e.what() << '\n';
        return kExitFailure;
    } catch (const Error& e) {
        std::cerr << "seroinv: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "seroinv: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
