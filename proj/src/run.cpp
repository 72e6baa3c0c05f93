#include "sspvb/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "sspvb/csv.hpp"
#include "sspvb/dataset_io.hpp"
#include "sspvb/error.hpp"

namespace sspvb {

namespace fs = std::filesystem;

namespace {

constexpr const char* kFrontHeader = "n_pv,n_bes,dod,coe_usd_per_kwh,llp_frac";

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    return out;
}

std::string describe_dataset(const RunConfig& config, const AnnualDataset& ds) {
    std::string source = config.weather_path.empty()
                             ? fmt::format("synthetic (seed {}, {} days, peak {} kW, latitude factor {})",
                                           config.synth.seed, config.synth.days, config.synth.peak_load_kw,
                                           config.synth.latitude_factor)
                             : fmt::format("{} + {}", config.weather_path.string(), config.load_path.string());
    return fmt::format("dataset: {}\nhours: {}\ntotal load: {:.3f} kWh\npeak load: {:.3f} kW\n", source, ds.hours(),
                       ds.total_load(), ds.peak_load());
}

std::string describe_config(const RunConfig& config) {
    std::string out = "config:\n";
    for (const auto& [key, value] : config.entries()) out += fmt::format("  {} = {}\n", key, value);
    return out;
}

std::string describe_row(const FrontRow& row) {
    return fmt::format("n_pv={} n_bes={} dod={:.2f}% coe={:.6f} USD/kWh llp={}", row.design.n_pv, row.design.n_bes,
                       100.0 * row.design.dod, row.coe, format_percent(row.llp));
}

bool row_less(const FrontRow& a, const FrontRow& b) {
    if (a.coe != b.coe) return a.coe < b.coe;
    if (a.llp != b.llp) return a.llp < b.llp;
    if (a.design.n_pv != b.design.n_pv) return a.design.n_pv < b.design.n_pv;
    if (a.design.n_bes != b.design.n_bes) return a.design.n_bes < b.design.n_bes;
    return a.design.dod < b.design.dod;
}

std::size_t evaluation_budget(Algorithm algorithm, const OptimizerSettings& s) {
    return algorithm == Algorithm::mopso ? s.mopso.swarm_size * (s.mopso.iterations + 1)
                                         : s.nsga2.population * (s.nsga2.generations + 1);
}

}  // namespace

std::string format_percent(double fraction) { return fmt::format("{:.4f}%", 100.0 * fraction); }

void prepare_output_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw InputError("output directory " + dir.string() + " cannot be created: " + ec.message());
    const fs::path probe = dir / ".sspvb_write_probe";
    {
        std::ofstream out(probe);
        if (!out || !(out << "probe")) throw InputError("output directory " + dir.string() + " is not writable");
    }
    fs::remove(probe, ec);
}

AnnualDataset load_dataset(const RunConfig& config) {
    if (!config.weather_path.empty()) return ingest_dataset(config.weather_path, config.load_path);
    return generate_synthetic(config.synth);
}

SizingProblem make_problem(const RunConfig& config) {
    SizingModel model{load_dataset(config), config.pv, config.battery, config.costs, config.energy_basis,
                      config.coe_penalty};
    SizingBounds bounds = default_bounds(model);
    if (config.n_pv_max) bounds.n_pv_max = *config.n_pv_max;
    if (config.n_bes_max) bounds.n_bes_max = *config.n_bes_max;
    bounds.dod = config.dod;
    bounds.dod_step = config.dod_step;
    return SizingProblem(std::move(model), bounds);
}

std::vector<FrontRow> to_front_rows(const std::vector<Solution>& front) {
    std::vector<FrontRow> rows;
    rows.reserve(front.size());
    for (const auto& s : front) rows.push_back({design_from_decision(s.decision), s.objectives[0], s.objectives[1]});
    return rows;
}

void write_front_csv(const fs::path& path, std::vector<FrontRow> rows) {
    std::sort(rows.begin(), rows.end(), row_less);
    auto out = open_out(path);
    out << kFrontHeader << '\n';
    for (const auto& r : rows)
        out << r.design.n_pv << ',' << r.design.n_bes << ',' << csv::format_double(r.design.dod) << ','
            << csv::format_double(r.coe) << ',' << csv::format_double(r.llp) << '\n';
}

std::vector<FrontRow> read_front_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || csv::trim(line) != kFrontHeader)
        throw InputError(path.string() + ": expected header '" + kFrontHeader + "'");
    std::vector<FrontRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto cells = csv::split_line(line);
        double v[5];
        if (cells.size() != 5) throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected 5 cells");
        for (std::size_t k = 0; k < 5; ++k)
            if (!csv::parse_double(cells[k], v[k]))
                throw InputError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + cells[k] + "'");
        rows.push_back({{std::lround(v[0]), std::lround(v[1]), v[2]}, v[3], v[4]});
    }
    return rows;
}

void write_surface_csv(const fs::path& path, const std::vector<FrontRow>& rows) {
    auto sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const FrontRow& a, const FrontRow& b) {
        return a.design.dod != b.design.dod ? a.design.dod < b.design.dod : row_less(a, b);
    });
    auto out = open_out(path);
    out << "dod,coe_usd_per_kwh,llp_frac\n";
    for (const auto& r : sorted)
        out << csv::format_double(r.design.dod) << ',' << csv::format_double(r.coe) << ','
            << csv::format_double(r.llp) << '\n';
}

void write_sweep_csv(const fs::path& path, const std::vector<SweepRow>& rows) {
    auto out = open_out(path);
    out << "dod,n_pv,n_bes,coe_usd_per_kwh,llp_frac,feasible\n";
    for (const auto& r : rows)
        out << csv::format_double(r.dod) << ',' << r.n_pv << ',' << r.n_bes << ',' << csv::format_double(r.coe) << ','
            << csv::format_double(r.llp) << ',' << (r.feasible ? "true" : "false") << '\n';
}

std::optional<FrontRow> best_reliable(const std::vector<FrontRow>& rows, double epsilon) {
    std::optional<FrontRow> best;
    for (const auto& r : rows)
        if (r.llp <= epsilon && (!best || row_less(r, *best))) best = r;
    return best;
}

std::optional<FrontRow> knee(const std::vector<FrontRow>& rows) {
    if (rows.empty()) return std::nullopt;
    auto sorted = rows;
    std::sort(sorted.begin(), sorted.end(), row_less);
    std::vector<ObjectivePoint> points;
    for (const auto& r : sorted) points.push_back({r.coe, r.llp});
    return sorted[knee_index(points)];
}

std::vector<AlgorithmOutcome> run_optimize(const RunConfig& config) {
    config.validate();
    prepare_output_dir(config.out_dir);
    const auto problem = make_problem(config);
    const auto settings = config.optimizer_settings();

    std::vector<AlgorithmOutcome> outcomes;
    for (Algorithm algorithm : config.algorithms()) {
        const auto start = std::chrono::steady_clock::now();
        const auto front = optimize(problem, algorithm, settings);
        const auto stop = std::chrono::steady_clock::now();
        AlgorithmOutcome outcome{algorithm, to_front_rows(front),
                                 std::chrono::duration<double>(stop - start).count(),
                                 evaluation_budget(algorithm, settings)};
        const auto name = to_string(algorithm);
        write_front_csv(config.out_dir / ("front_" + name + ".csv"), outcome.front);
        write_surface_csv(config.out_dir / ("surface_" + name + ".csv"), outcome.front);
        outcomes.push_back(std::move(outcome));
    }

    auto comparison = open_out(config.out_dir / "comparison.csv");
    comparison << "method,optimal_dod,n_pv,n_bes,coe_usd_per_kwh,llp_frac,knee_dod,knee_coe_usd_per_kwh,knee_llp_frac\n";
    std::string table = fmt::format("{:<8} {:>16} {:>14} {:>10}\n", "Method", "Optimal DOD (%)", "COE (USD/kWh)",
                                    "LLP (%)");
    std::string knees;
    std::string timings;
    for (const auto& o : outcomes) {
        const auto name = to_string(o.algorithm);
        const auto best = best_reliable(o.front, config.epsilon);
        const auto k = knee(o.front);
        comparison << name << ',';
        if (best)
            comparison << csv::format_double(best->design.dod) << ',' << best->design.n_pv << ',' << best->design.n_bes
                       << ',' << csv::format_double(best->coe) << ',' << csv::format_double(best->llp);
        else
            comparison << ",,,,";
        comparison << ',';
        if (k)
            comparison << csv::format_double(k->design.dod) << ',' << csv::format_double(k->coe) << ','
                       << csv::format_double(k->llp);
        else
            comparison << ",,";
        comparison << '\n';

        table += best ? fmt::format("{:<8} {:>16.2f} {:>14.6f} {:>10.4f}\n", name, 100.0 * best->design.dod, best->coe,
                                    100.0 * best->llp)
                      : fmt::format("{:<8} {:>16} {:>14} {:>10}\n", name, "-", "infeasible", "-");
        if (k) knees += fmt::format("  {}: {}\n", name, describe_row(*k));
        timings += fmt::format("  {}: {} evaluations, {:.3f} s, front size {}\n", name, o.evaluations, o.seconds,
                               o.front.size());
    }

    auto summary = open_out(config.out_dir / "summary.txt");
    summary << "sspvb optimize\n"
            << fmt::format("seed: {}\nthreads: {}\nepsilon: {}\n", config.seed, config.threads, config.epsilon)
            << describe_dataset(config, problem.model().dataset)
            << fmt::format("bounds: n_pv [0, {}], n_bes [0, {}], dod [{}, {}] step {}\n", problem.bounds().n_pv_max,
                           problem.bounds().n_bes_max, config.dod.min, config.dod.max, config.dod_step)
            << "runs:\n"
            << timings << "knee points:\n"
            << knees << fmt::format("best COE at LLP <= {}:\n", format_percent(config.epsilon)) << table
            << describe_config(config);
    return outcomes;
}

std::vector<std::vector<SweepRow>> run_sweep(const RunConfig& config) {
    config.validate();
    prepare_output_dir(config.out_dir);
    auto sweep_config = config;
    // The swept values must be admissible even when they leave the search box.
    sweep_config.dod.min = std::min(config.dod.min, config.sweep_from);
    sweep_config.dod.max = std::max(config.dod.max, config.sweep_to);
    const auto problem = make_problem(sweep_config);
    const auto dods = linspace_step(config.sweep_from, config.sweep_to, config.sweep_step);
    const auto settings = config.optimizer_settings();

    std::vector<std::vector<SweepRow>> results;
    std::string text = fmt::format("sspvb sweep-dod\nseed: {}\nepsilon: {}\n", config.seed, config.epsilon) +
                       describe_dataset(config, problem.model().dataset);
    for (Algorithm algorithm : config.algorithms()) {
        const auto start = std::chrono::steady_clock::now();
        auto rows = dod_sweep(problem, dods, config.epsilon, algorithm, settings);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const auto name = to_string(algorithm);
        write_sweep_csv(config.out_dir / ("sweep_" + name + ".csv"), rows);

        text += fmt::format("\n{} ({:.3f} s)\n{:>8} {:>8} {:>8} {:>14} {:>10} {}\n", name, seconds, "DOD (%)", "N_PV",
                            "N_BES", "COE (USD/kWh)", "LLP (%)", "note");
        const SweepRow* optimum = nullptr;
        for (const auto& r : rows)
            if (r.feasible && (optimum == nullptr || r.coe < optimum->coe)) optimum = &r;
        for (const auto& r : rows)
            text += fmt::format("{:>8.1f} {:>8} {:>8} {:>14.6f} {:>10.4f} {}\n", 100.0 * r.dod, r.n_pv, r.n_bes, r.coe,
                                100.0 * r.llp, !r.feasible ? "infeasible" : (&r == optimum ? "optimum" : ""));
        results.push_back(std::move(rows));
    }
    text += describe_config(config);
    open_out(config.out_dir / "sweep_summary.txt") << text;
    return results;
}

DesignEvaluation run_simulate(const RunConfig& config, const Design& design) {
    config.validate();
    prepare_output_dir(config.out_dir);
    SizingModel model{load_dataset(config), config.pv, config.battery, config.costs, config.energy_basis,
                      config.coe_penalty};
    validate_design(design, {0.0, 1.0});
    const auto trace = simulate(design, model.dataset, model.pv, model.battery);
    const SizingProblem problem(model, default_bounds(model));
    const auto eval = problem.evaluate_design(design);

    auto out = open_out(config.out_dir / "trace.csv");
    out << "hour,pv_kw,load_kw,soc_kwh,deficit_kwh,surplus_dumped_kwh,charge_stored_kwh,battery_delivered_kwh\n";
    for (std::size_t t = 0; t < trace.hours; ++t)
        out << t << ',' << csv::format_double(trace.pv[t]) << ',' << csv::format_double(model.dataset.load[t]) << ','
            << csv::format_double(trace.soc[t]) << ',' << csv::format_double(trace.deficit[t]) << ','
            << csv::format_double(trace.surplus_dumped[t]) << ',' << csv::format_double(trace.charge_stored[t]) << ','
            << csv::format_double(trace.battery_delivered[t]) << '\n';

    open_out(config.out_dir / "trace_summary.txt")
        << "sspvb simulate\n"
        << describe_dataset(config, model.dataset)
        << fmt::format("design: n_pv={} n_bes={} dod={}\n", design.n_pv, design.n_bes, design.dod)
        << fmt::format("soc window: [{:.3f}, {:.3f}] kWh\n", trace.soc_min, trace.soc_max)
        << fmt::format("total deficit: {:.6f} kWh\nserved energy: {:.6f} kWh\n", trace.total_deficit,
                       trace.served_energy)
        << fmt::format("discharge throughput: {:.6f} kWh\n", trace.discharge_throughput)
        << fmt::format("battery life: {:.4f} years, replacements: {}\n", eval.cost.battery_life,
                       eval.cost.replacements)
        << fmt::format("ATC: {:.4f} USD/yr (capital {:.4f}, replacement {:.4f}, O&M {:.4f})\n", eval.cost.atc,
                       eval.cost.annualized_capital, eval.cost.annualized_replacement, eval.cost.annual_om)
        << fmt::format("LLP: {}\nCOE: {:.6f} USD/kWh\n", format_percent(eval.llp), eval.coe);
    return eval;
}

void run_gen_data(const SyntheticSettings& settings, const fs::path& out_dir) {
    prepare_output_dir(out_dir);
    write_dataset(generate_synthetic(settings), out_dir / "weather.csv", out_dir / "load.csv");
}

DesignGrid parse_grid(const std::string& spec) {
    std::map<std::string, std::vector<double>> axes;
    std::stringstream in(spec);
    std::string part;
    while (std::getline(in, part, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw InputError("grid spec: expected name=lo:hi:step, got '" + part + "'");
        const std::string name(csv::trim(std::string_view(part).substr(0, eq)));
        std::vector<double> nums;
        std::stringstream range(part.substr(eq + 1));
        std::string item;
        while (std::getline(range, item, ':')) {
            double v = 0.0;
            if (!csv::parse_double(item, v)) throw InputError("grid spec: bad number '" + item + "' for " + name);
            nums.push_back(v);
        }
        if (nums.size() != 3) throw InputError("grid spec: " + name + " needs lo:hi:step");
        if (name != "n_pv" && name != "n_bes" && name != "dod") throw InputError("grid spec: unknown axis '" + name + "'");
        axes[name] = linspace_step(nums[0], nums[1], nums[2]);
    }
    for (const char* name : {"n_pv", "n_bes", "dod"})
        if (!axes.contains(name)) throw InputError(std::string("grid spec: missing axis ") + name);
    DesignGrid grid;
    for (double v : axes["n_pv"]) grid.n_pv.push_back(std::lround(v));
    for (double v : axes["n_bes"]) grid.n_bes.push_back(std::lround(v));
    grid.dod = axes["dod"];
    return grid;
}

std::vector<Solution> run_brute_force(const RunConfig& config, const DesignGrid& grid) {
    config.validate();
    if (grid.size() > kBruteForceCap)
        throw InputError("brute-force grid has " + std::to_string(grid.size()) + " points, cap is " +
                         std::to_string(kBruteForceCap));
    prepare_output_dir(config.out_dir);
    auto wide = config;
    wide.dod = {std::min(config.dod.min, *std::min_element(grid.dod.begin(), grid.dod.end())),
                std::max(config.dod.max, *std::max_element(grid.dod.begin(), grid.dod.end()))};
    const auto problem = make_problem(wide);
    auto front = brute_force_front(problem, grid, config.threads);
    const auto rows = to_front_rows(front);
    write_front_csv(config.out_dir / "front_brute_force.csv", rows);
    write_surface_csv(config.out_dir / "surface_brute_force.csv", rows);
    return front;
}

std::vector<fs::path> run_report(const fs::path& run_dir, double epsilon) {
    if (!fs::is_directory(run_dir)) throw InputError("run directory " + run_dir.string() + " does not exist");
    std::vector<fs::path> fronts;
    for (const auto& entry : fs::directory_iterator(run_dir)) {
        const auto name = entry.path().filename().string();
        if (name.starts_with("front_") && name.ends_with(".csv")) fronts.push_back(entry.path());
    }
    std::sort(fronts.begin(), fronts.end());
    if (fronts.empty()) throw InputError("no front_*.csv files in " + run_dir.string());

    std::vector<fs::path> written;
    std::string report = "sspvb report\n";
    for (const auto& path : fronts) {
        const auto rows = read_front_csv(path);
        const auto label = path.stem().string().substr(6);
        const auto surface = run_dir / ("surface_" + label + ".csv");
        write_surface_csv(surface, rows);
        written.push_back(surface);
        report += fmt::format("\n{} ({} points)\n", label, rows.size());
        if (const auto k = knee(rows)) report += "  knee: " + describe_row(*k) + "\n";
        if (const auto b = best_reliable(rows, epsilon))
            report += fmt::format("  best COE at LLP <= {}: ", format_percent(epsilon)) + describe_row(*b) + "\n";
        else
            report += fmt::format("  no point with LLP <= {}\n", format_percent(epsilon));
    }
    const auto report_path = run_dir / "report.txt";
    open_out(report_path) << report;
    written.push_back(report_path);
    return written;
}

}  // namespace sspvb
