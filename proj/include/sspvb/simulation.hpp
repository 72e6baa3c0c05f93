#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sspvb/system.hpp"

namespace sspvb {

/// Horizon-level aggregates of a chronological run. Energies in kWh.
struct SimulationTotals {
    std::size_t hours = 0;
    double discharge_throughput = 0.0;  // energy drawn out of storage, before discharge losses
    double served_energy = 0.0;
    double total_load = 0.0;
    double total_deficit = 0.0;
};

/// Full hour-by-hour trace. `soc` is the stored energy at the end of each hour.
/// `charge_stored` is energy entering storage (after charge losses) and
/// `battery_delivered` is energy reaching the load from storage.
struct SimulationResult : SimulationTotals {
    std::vector<double> pv;
    std::vector<double> soc;
    std::vector<double> deficit;
    std::vector<double> surplus_dumped;
    std::vector<double> charge_stored;
    std::vector<double> battery_delivered;
    double soc_min = 0.0;
    double soc_max = 0.0;
};

/// Per-unit PV output (kW per installed unit) for every hour of the dataset.
[[nodiscard]] std::vector<double> unit_pv_profile(const AnnualDataset& dataset, const PVSpec& pv);

/// One-hour-step load-following dispatch: PV serves the load, surplus charges
/// the bank up to its rate and capacity limits and the rest is dumped, deficits
/// discharge the bank down to (1 - dod) of capacity; unmet energy is recorded as
/// deficit. The bank starts full.
[[nodiscard]] SimulationResult simulate(const Design& design, const AnnualDataset& dataset, const PVSpec& pv,
                                        const BatterySpec& bat);

/// Dispatch over a precomputed per-unit PV profile (kW per unit per hour).
[[nodiscard]] SimulationResult simulate(const Design& design, std::span<const double> unit_pv,
                                        std::span<const double> load, const BatterySpec& bat);

/// Same dispatch as `simulate` but keeps only the aggregates. `unit_pv` must
/// come from `unit_pv_profile` for the same dataset and PV spec.
[[nodiscard]] SimulationTotals simulate_totals(const Design& design, std::span<const double> unit_pv,
                                               std::span<const double> load, const BatterySpec& bat);

/// Sum of deficits over sum of load, as a fraction; 0 when nothing is demanded.
[[nodiscard]] double compute_llp(const SimulationTotals& totals) noexcept;

}  // namespace sspvb
