#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sspvb/dataset_io.hpp"
#include "sspvb/economics.hpp"
#include "sspvb/mopso.hpp"
#include "sspvb/nsga2.hpp"
#include "sspvb/sizing.hpp"
#include "sspvb/system.hpp"

namespace sspvb {

/// Everything a CLI run needs. Populated from defaults, then a config file,
/// then SSPVB_* environment variables, then command-line flags.
struct RunConfig {
    // Dataset: both paths set -> CSV ingestion; both empty -> synthetic year.
    std::filesystem::path weather_path;
    std::filesystem::path load_path;
    SyntheticSettings synth;

    PVSpec pv;
    BatterySpec battery;
    CostParams costs;
    EnergyBasis energy_basis = EnergyBasis::served;
    double coe_penalty = kCoePenalty;

    std::optional<long> n_pv_max;   // unset -> scaled from the dataset
    std::optional<long> n_bes_max;  // unset -> scaled from the dataset
    DodBounds dod;
    double dod_step = 0.0;

    MopsoParams mopso;
    Nsga2Params nsga2;

    std::string algo = "both";  // mopso | nsga2 | both
    std::uint64_t seed = 1;
    unsigned threads = 1;
    double epsilon = 0.0;
    std::filesystem::path out_dir = "out";

    double sweep_from = 0.20;
    double sweep_to = 0.80;
    double sweep_step = 0.10;

    /// Sets one dotted key. Throws InputError for unknown keys or bad values.
    void set(std::string_view key, std::string_view value);

    /// Every key with its current value, in a fixed order.
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> entries() const;

    /// Checks every owning type's invariants and that input files exist.
    void validate() const;

    [[nodiscard]] std::vector<Algorithm> algorithms() const;

    /// Optimizer parameters with the run seed and thread count applied.
    [[nodiscard]] OptimizerSettings optimizer_settings() const;
};

[[nodiscard]] const std::vector<std::string>& config_keys();

/// Applies `key = value` lines; '#' starts a comment. Errors cite `source`
/// and the line number.
void apply_config_text(RunConfig& config, std::string_view text, const std::string& source = "<config>");

void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Environment variable for a key: SSPVB_ + upper-cased key, dots as '_'.
[[nodiscard]] std::string env_name(std::string_view key);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Applies overrides for every known key found through `lookup` (defaults to
/// the process environment). Unrecognized SSPVB_* variables in `environ` are
/// rejected when `strict` is set.
void apply_env_overrides(RunConfig& config, const EnvLookup& lookup = {}, bool strict = true);

}  // namespace sspvb
