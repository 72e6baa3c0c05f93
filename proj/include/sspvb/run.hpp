#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sspvb/config.hpp"
#include "sspvb/sizing.hpp"

namespace sspvb {

/// Creates `dir` if needed and proves it writable. Throws InputError otherwise.
void prepare_output_dir(const std::filesystem::path& dir);

[[nodiscard]] AnnualDataset load_dataset(const RunConfig& config);

/// Model plus bounds resolved against the dataset.
[[nodiscard]] SizingProblem make_problem(const RunConfig& config);

/// One row of a front file.
struct FrontRow {
    Design design;
    double coe = 0.0;
    double llp = 0.0;
};

[[nodiscard]] std::vector<FrontRow> to_front_rows(const std::vector<Solution>& front);

/// Rows sorted by (coe, llp, n_pv, n_bes, dod).
void write_front_csv(const std::filesystem::path& path, std::vector<FrontRow> rows);
[[nodiscard]] std::vector<FrontRow> read_front_csv(const std::filesystem::path& path);

/// (dod, coe, llp) triples, one per front row, ordered by dod then coe.
void write_surface_csv(const std::filesystem::path& path, const std::vector<FrontRow>& rows);

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

/// Cheapest row with llp <= epsilon.
[[nodiscard]] std::optional<FrontRow> best_reliable(const std::vector<FrontRow>& rows, double epsilon);

/// Row minimizing the normalized distance to the ideal point.
[[nodiscard]] std::optional<FrontRow> knee(const std::vector<FrontRow>& rows);

struct AlgorithmOutcome {
    Algorithm algorithm;
    std::vector<FrontRow> front;
    double seconds = 0.0;
    std::size_t evaluations = 0;
};

/// optimize: front_<algo>.csv, surface_<algo>.csv, comparison.csv and
/// summary.txt in config.out_dir.
std::vector<AlgorithmOutcome> run_optimize(const RunConfig& config);

/// sweep-dod: sweep_<algo>.csv and sweep_summary.txt.
std::vector<std::vector<SweepRow>> run_sweep(const RunConfig& config);

/// simulate: hour-by-hour trace.csv for one design plus trace_summary.txt.
DesignEvaluation run_simulate(const RunConfig& config, const Design& design);

/// gen-data: weather.csv and load.csv.
void run_gen_data(const SyntheticSettings& settings, const std::filesystem::path& out_dir);

/// Parses "n_pv=0:20:1,n_bes=0:10:1,dod=0.2:0.8:0.1" (lo:hi:step, inclusive).
[[nodiscard]] DesignGrid parse_grid(const std::string& spec);

/// brute-force: front_brute_force.csv and surface_brute_force.csv.
std::vector<Solution> run_brute_force(const RunConfig& config, const DesignGrid& grid);

/// report: re-reads front_*.csv in `run_dir`, rewrites surface_*.csv and writes
/// report.txt with the knee and best-reliable rows per front.
std::vector<std::filesystem::path> run_report(const std::filesystem::path& run_dir, double epsilon);

/// Percent with four decimals, e.g. "0.0000%".
[[nodiscard]] std::string format_percent(double fraction);

}  // namespace sspvb
