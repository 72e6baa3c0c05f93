// sspvb: size a standalone PV/battery system by minimizing cost of energy and
// loss of load probability.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sspvb/config.hpp"
#include "sspvb/error.hpp"
#include "sspvb/run.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<unsigned> threads;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Config file (key = value per line)");
    cmd->add_option("--set", opts.overrides, "Override a config key, e.g. --set battery.float_life=4");
    cmd->add_option("--seed", opts.seed, "Random seed");
    cmd->add_option("--out", opts.out, "Output directory");
    cmd->add_option("--threads", opts.threads, "Parallel evaluation threads");
}

/// Defaults < config file < SSPVB_* environment < command-line flags.
sspvb::RunConfig build_config(const CommonOptions& opts) {
    sspvb::RunConfig config;
    if (!opts.config_path.empty()) sspvb::apply_config_file(config, opts.config_path);
    sspvb::apply_env_overrides(config);
    for (const auto& item : opts.overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw sspvb::InputError("--set expects key=value, got '" + item + "'");
        config.set(item.substr(0, eq), item.substr(eq + 1));
    }
    if (opts.seed) config.seed = *opts.seed;
    if (opts.out) config.out_dir = *opts.out;
    if (opts.threads) config.threads = *opts.threads;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Standalone PV/battery sizing with MOPSO and NSGA-II"};
    app.require_subcommand(1);

    CommonOptions optimize_opts;
    std::optional<std::string> algo;
    auto* optimize = app.add_subcommand("optimize", "Run MOPSO and/or NSGA-II over (n_pv, n_bes, dod)");
    add_common(optimize, optimize_opts);
    optimize->add_option("--algo", algo, "mopso | nsga2 | both")->check(CLI::IsMember({"mopso", "nsga2", "both"}));

    CommonOptions sweep_opts;
    std::optional<double> sweep_from;
    std::optional<double> sweep_to;
    std::optional<double> sweep_step;
    std::optional<double> epsilon;
    std::optional<std::string> sweep_algo;
    auto* sweep = app.add_subcommand("sweep-dod", "Cheapest design with LLP <= epsilon at each fixed DOD");
    add_common(sweep, sweep_opts);
    sweep->add_option("--from", sweep_from, "First DOD (fraction)");
    sweep->add_option("--to", sweep_to, "Last DOD (fraction)");
    sweep->add_option("--step", sweep_step, "DOD increment");
    sweep->add_option("--epsilon", epsilon, "Maximum LLP (fraction)");
    sweep->add_option("--algo", sweep_algo, "mopso | nsga2 | both")->check(CLI::IsMember({"mopso", "nsga2", "both"}));

    CommonOptions sim_opts;
    long n_pv = 0;
    long n_bes = 0;
    double dod = 0.8;
    auto* sim = app.add_subcommand("simulate", "Hour-by-hour trace of a single design");
    add_common(sim, sim_opts);
    sim->add_option("--n-pv", n_pv, "PV unit count")->required();
    sim->add_option("--n-bes", n_bes, "Battery unit count")->required();
    sim->add_option("--dod", dod, "Depth of discharge (fraction)")->required();

    sspvb::SyntheticSettings synth;
    std::string gen_out = "data";
    auto* gen = app.add_subcommand("gen-data", "Write a synthetic weather/load year as CSV");
    gen->add_option("--seed", synth.seed, "Generator seed");
    gen->add_option("--days", synth.days, "Number of days")->check(CLI::PositiveNumber);
    gen->add_option("--peak-load", synth.peak_load_kw, "Nominal peak load (kW)");
    gen->add_option("--latitude-factor", synth.latitude_factor, "Seasonality in [0, 1]");
    gen->add_option("--out", gen_out, "Output directory");

    CommonOptions brute_opts;
    std::string grid_spec = "n_pv=0:20:1,n_bes=0:10:1,dod=0.2:0.8:0.1";
    auto* brute = app.add_subcommand("brute-force", "Exact Pareto front over a design grid");
    add_common(brute, brute_opts);
    brute->add_option("--grid", grid_spec, "Grid, e.g. n_pv=0:20:1,n_bes=0:10:1,dod=0.2:0.8:0.1");

    std::string run_dir = "out";
    double report_epsilon = 0.0;
    auto* report = app.add_subcommand("report", "Surface CSVs and knee points from a previous run");
    report->add_option("--run-dir", run_dir, "Directory holding front_*.csv");
    report->add_option("--epsilon", report_epsilon, "Reliability threshold for the best-COE line");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*optimize) {
            auto config = build_config(optimize_opts);
            if (algo) config.algo = *algo;
            for (const auto& o : sspvb::run_optimize(config)) {
                const auto best = sspvb::best_reliable(o.front, config.epsilon);
                std::cout << sspvb::to_string(o.algorithm) << ": " << o.front.size() << " front points";
                if (best)
                    std::cout << ", best COE " << best->coe << " USD/kWh at DOD " << best->design.dod << " (LLP "
                              << sspvb::format_percent(best->llp) << ")";
                std::cout << '\n';
            }
            std::cout << "wrote " << config.out_dir.string() << '\n';
        } else if (*sweep) {
            auto config = build_config(sweep_opts);
            if (sweep_from) config.sweep_from = *sweep_from;
            if (sweep_to) config.sweep_to = *sweep_to;
            if (sweep_step) config.sweep_step = *sweep_step;
            if (epsilon) config.epsilon = *epsilon;
            if (sweep_algo) config.algo = *sweep_algo;
            const auto results = sspvb::run_sweep(config);
            std::cout << "wrote " << results.size() << " sweep table(s) to " << config.out_dir.string() << '\n';
        } else if (*sim) {
            const auto config = build_config(sim_opts);
            const auto eval = sspvb::run_simulate(config, {n_pv, n_bes, dod});
            std::cout << "LLP " << sspvb::format_percent(eval.llp) << ", COE " << eval.coe << " USD/kWh\n";
        } else if (*gen) {
            sspvb::run_gen_data(synth, gen_out);
            std::cout << "wrote " << gen_out << "/weather.csv and " << gen_out << "/load.csv\n";
        } else if (*brute) {
            const auto config = build_config(brute_opts);
            const auto front = sspvb::run_brute_force(config, sspvb::parse_grid(grid_spec));
            std::cout << front.size() << " non-dominated grid points\n";
        } else if (*report) {
            for (const auto& p : sspvb::run_report(run_dir, report_epsilon)) std::cout << "wrote " << p.string() << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
