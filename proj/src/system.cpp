#include "sspvb/system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sspvb/error.hpp"

namespace sspvb {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw InputError(message);
}

}  // namespace

double AnnualDataset::total_load() const noexcept {
    return std::accumulate(load.begin(), load.end(), 0.0);
}

double AnnualDataset::peak_load() const noexcept {
    return load.empty() ? 0.0 : *std::max_element(load.begin(), load.end());
}

double AnnualDataset::mean_daily_load() const noexcept {
    return load.empty() ? 0.0 : total_load() * 24.0 / static_cast<double>(load.size());
}

void AnnualDataset::validate() const {
    require(!load.empty(), "dataset is empty");
    require(irradiance.size() == load.size() && ambient_temp.size() == load.size(),
            "dataset series lengths differ: irradiance=" + std::to_string(irradiance.size()) +
                " ambient_temp=" + std::to_string(ambient_temp.size()) +
                " load=" + std::to_string(load.size()));
    for (std::size_t t = 0; t < load.size(); ++t) {
        require(std::isfinite(irradiance[t]) && irradiance[t] >= 0.0,
                "irradiance must be finite and >= 0 at hour " + std::to_string(t));
        require(std::isfinite(load[t]) && load[t] >= 0.0,
                "load must be finite and >= 0 at hour " + std::to_string(t));
        require(std::isfinite(ambient_temp[t]), "ambient_temp must be finite at hour " + std::to_string(t));
    }
}

void PVSpec::validate() const {
    require(rated_power_per_unit > 0.0, "pv.rated_power_per_unit must be > 0");
    require(derating > 0.0 && derating <= 1.0, "pv.derating must lie in (0, 1]");
    require(ref_irradiance > 0.0, "pv.ref_irradiance must be > 0");
    require(std::isfinite(temp_coeff) && std::isfinite(noct) && std::isfinite(ref_cell_temp),
            "pv parameters must be finite");
}

void BatterySpec::validate() const {
    require(capacity_per_unit > 0.0, "battery.capacity_per_unit must be > 0");
    require(charge_eff > 0.0 && charge_eff <= 1.0, "battery.charge_eff must lie in (0, 1]");
    require(discharge_eff > 0.0 && discharge_eff <= 1.0, "battery.discharge_eff must lie in (0, 1]");
    require(max_charge_rate >= 0.0, "battery.max_charge_rate must be >= 0");
    require(max_discharge_rate >= 0.0, "battery.max_discharge_rate must be >= 0");
    require(float_life > 0.0, "battery.float_life must be > 0");
    require(cycle_life_a > 0.0, "battery.cycle_life_a must be > 0");
    require(cycle_life_b >= 0.0, "battery.cycle_life_b must be >= 0");
}

void validate_design(const Design& design, const DodBounds& bounds) {
    require(design.n_pv >= 0, "design.n_pv must be >= 0");
    require(design.n_bes >= 0, "design.n_bes must be >= 0");
    require(design.dod >= bounds.min && design.dod <= bounds.max,
            "design.dod " + std::to_string(design.dod) + " outside [" + std::to_string(bounds.min) + ", " +
                std::to_string(bounds.max) + "]");
}

void CostParams::validate() const {
    require(project_life > 0.0, "cost.project_life must be > 0");
    require(discount_rate >= 0.0, "cost.discount_rate must be >= 0");
    require(pv_unit_cost >= 0.0 && bes_unit_cost >= 0.0 && converter_cost >= 0.0 && om_frac >= 0.0 &&
                bes_replacement_cost >= 0.0,
            "costs must be >= 0");
}

double cell_temperature(double irradiance, double ambient_temp, const PVSpec& spec) noexcept {
    return ambient_temp + irradiance * (spec.noct - 20.0) / 800.0;
}

double pv_power(double irradiance, double ambient_temp, const PVSpec& spec, long n_pv) noexcept {
    const double t_cell = cell_temperature(irradiance, ambient_temp, spec);
    const double per_unit = spec.rated_power_per_unit * spec.derating * (irradiance / spec.ref_irradiance) *
                            (1.0 + spec.temp_coeff * (t_cell - spec.ref_cell_temp));
    return std::max(0.0, static_cast<double>(n_pv) * per_unit);
}

}  // namespace sspvb
