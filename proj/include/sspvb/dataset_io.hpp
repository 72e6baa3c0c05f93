#pragma once

#include <cstdint>
#include <filesystem>

#include "sspvb/system.hpp"

namespace sspvb {

/// Reads a weather CSV (`hour,ghi_w_m2,temp_c`) and a load CSV
/// (`hour,load_kw`). Hours must run 0, 1, 2, ... in both files and the row
/// counts must match. Errors name the file, the data row (0-based, equal to the
/// hour), the line, and the column.
[[nodiscard]] AnnualDataset ingest_dataset(const std::filesystem::path& weather_path,
                                           const std::filesystem::path& load_path);

void write_dataset(const AnnualDataset& dataset, const std::filesystem::path& weather_path,
                   const std::filesystem::path& load_path);

struct SyntheticSettings {
    std::uint64_t seed = 42;
    int days = 365;
    double peak_load_kw = 10.0;
    /// 0 gives an equatorial year with no seasonal swing; 1 gives roughly
    /// mid-latitude day-length and irradiance seasonality.
    double latitude_factor = 0.2;
};

/// Deterministic synthetic year: clear-sky half-sine irradiance over each
/// daylight window scaled by a persistent daily clearness index, a diurnal
/// temperature sinusoid, and a residential load with morning and evening peaks.
/// Irradiance is exactly 0 outside daylight and never exceeds 1100 W/m^2.
[[nodiscard]] AnnualDataset generate_synthetic(const SyntheticSettings& settings);

/// Expected hourly mean of the synthetic load, from the profile shape alone.
[[nodiscard]] double synthetic_mean_load(double peak_load_kw);

}  // namespace sspvb
