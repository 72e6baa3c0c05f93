#pragma once

#include <cstddef>
#include <vector>

namespace sspvb {

inline constexpr std::size_t kHoursPerYear = 8760;

/// Aligned hourly weather and load series. A standard year has 8760 hours;
/// shorter horizons are allowed (tests, one-week oracle runs) as long as the
/// three series stay the same length.
struct AnnualDataset {
    std::vector<double> irradiance;    // W/m^2
    std::vector<double> ambient_temp;  // deg C
    std::vector<double> load;          // kW, constant over each hour

    [[nodiscard]] std::size_t hours() const noexcept { return load.size(); }
    [[nodiscard]] double total_load() const noexcept;
    [[nodiscard]] double peak_load() const noexcept;
    /// Mean energy demanded per 24 h.
    [[nodiscard]] double mean_daily_load() const noexcept;

    /// Throws InputError on length mismatch, empty series, or negative values.
    void validate() const;
};

struct PVSpec {
    double rated_power_per_unit = 0.25;  // kW at reference conditions
    double derating = 0.9;
    double temp_coeff = -0.004;  // per deg C
    double noct = 45.0;
    double ref_irradiance = 1000.0;
    double ref_cell_temp = 25.0;

    void validate() const;
};

/// Battery unit parameters. Cycle life follows a power law in depth of
/// discharge: cycles(dod) = cycle_life_a * dod^-cycle_life_b.
struct BatterySpec {
    double capacity_per_unit = 2.4;  // kWh
    double charge_eff = 0.9;
    double discharge_eff = 0.95;
    double max_charge_rate = 0.6;     // kW per unit
    double max_discharge_rate = 0.6;  // kW per unit
    double float_life = 4.0;          // years
    double cycle_life_a = 600.0;
    double cycle_life_b = 1.3;

    void validate() const;
};

/// A candidate sizing: PV unit count, battery unit count, and the depth of
/// discharge that sets the battery's usable window.
struct Design {
    long n_pv = 0;
    long n_bes = 0;
    double dod = 0.8;

    friend bool operator==(const Design&, const Design&) = default;
};

struct DodBounds {
    double min = 0.20;
    double max = 0.80;
};

void validate_design(const Design& design, const DodBounds& bounds = {});

struct CostParams {
    double pv_unit_cost = 250.0;           // USD per PV unit
    double bes_unit_cost = 550.0;          // USD per battery unit
    double converter_cost = 2000.0;        // USD, fixed
    double om_frac = 0.01;                 // of capital, per year
    double discount_rate = 0.06;
    double project_life = 20.0;            // years
    double bes_replacement_cost = 550.0;   // USD per unit per replacement

    void validate() const;
};

/// Cell temperature from the NOCT relation.
[[nodiscard]] double cell_temperature(double irradiance, double ambient_temp, const PVSpec& spec) noexcept;

/// Array output in kW for `n_pv` units: linear in irradiance, derated, with a
/// linear temperature correction. Never negative.
[[nodiscard]] double pv_power(double irradiance, double ambient_temp, const PVSpec& spec, long n_pv) noexcept;

}  // namespace sspvb
