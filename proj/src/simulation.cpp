#include "sspvb/simulation.hpp"

#include <algorithm>
#include <string>

#include "sspvb/error.hpp"

namespace sspvb {

namespace {

struct HourFlows {
    double pv;
    double soc;
    double deficit;
    double dumped;
    double charge;
    double delivered;
};

struct NoTrace {
    void reserve(std::size_t) {}
    void record(const HourFlows&) {}
};

struct FullTrace {
    SimulationResult* out;
    void reserve(std::size_t n) {
        for (auto* v : {&out->pv, &out->soc, &out->deficit, &out->surplus_dumped, &out->charge_stored,
                        &out->battery_delivered})
            v->reserve(n);
    }
    void record(const HourFlows& f) {
        out->pv.push_back(f.pv);
        out->soc.push_back(f.soc);
        out->deficit.push_back(f.deficit);
        out->surplus_dumped.push_back(f.dumped);
        out->charge_stored.push_back(f.charge);
        out->battery_delivered.push_back(f.delivered);
    }
};

template <class Trace>
SimulationTotals dispatch(const Design& design, std::span<const double> unit_pv, std::span<const double> load,
                          const BatterySpec& bat, Trace& trace) {
    if (unit_pv.size() != load.size())
        throw InputError("PV profile has " + std::to_string(unit_pv.size()) + " hours but load has " +
                         std::to_string(load.size()));

    const double n_pv = static_cast<double>(design.n_pv);
    const double n_bes = static_cast<double>(design.n_bes);
    const double soc_max = n_bes * bat.capacity_per_unit;
    const double soc_min = (1.0 - design.dod) * soc_max;
    const double charge_limit = n_bes * bat.max_charge_rate;
    const double discharge_limit = n_bes * bat.max_discharge_rate;

    SimulationTotals totals;
    totals.hours = load.size();
    trace.reserve(load.size());

    double soc = soc_max;
    for (std::size_t t = 0; t < load.size(); ++t) {
        HourFlows f{n_pv * unit_pv[t], 0.0, 0.0, 0.0, 0.0, 0.0};
        const double net = f.pv - load[t];
        if (net >= 0.0) {
            f.charge = std::max(0.0, std::min({net * bat.charge_eff, soc_max - soc, charge_limit}));
            soc = std::min(soc + f.charge, soc_max);
            f.dumped = std::max(0.0, net - f.charge / bat.charge_eff);
        } else {
            const double need = -net;
            const double available = std::max(0.0, soc - soc_min) * bat.discharge_eff;
            f.delivered = std::min({need, available, discharge_limit});
            const double drawn = f.delivered / bat.discharge_eff;
            soc = std::max(soc - drawn, soc_min);
            f.deficit = need - f.delivered;
            totals.discharge_throughput += drawn;
        }
        f.soc = soc;
        totals.total_load += load[t];
        totals.total_deficit += f.deficit;
        totals.served_energy += load[t] - f.deficit;
        trace.record(f);
    }
    return totals;
}

}  // namespace

std::vector<double> unit_pv_profile(const AnnualDataset& dataset, const PVSpec& pv) {
    std::vector<double> profile(dataset.irradiance.size());
    for (std::size_t t = 0; t < profile.size(); ++t)
        profile[t] = pv_power(dataset.irradiance[t], dataset.ambient_temp[t], pv, 1);
    return profile;
}

SimulationResult simulate(const Design& design, const AnnualDataset& dataset, const PVSpec& pv,
                          const BatterySpec& bat) {
    dataset.validate();
    const auto profile = unit_pv_profile(dataset, pv);
    return simulate(design, profile, dataset.load, bat);
}

SimulationResult simulate(const Design& design, std::span<const double> unit_pv, std::span<const double> load,
                          const BatterySpec& bat) {
    validate_design(design, {0.0, 1.0});
    SimulationResult result;
    FullTrace trace{&result};
    static_cast<SimulationTotals&>(result) = dispatch(design, unit_pv, load, bat, trace);
    result.soc_max = static_cast<double>(design.n_bes) * bat.capacity_per_unit;
    result.soc_min = (1.0 - design.dod) * result.soc_max;
    return result;
}

SimulationTotals simulate_totals(const Design& design, std::span<const double> unit_pv,
                                 std::span<const double> load, const BatterySpec& bat) {
    NoTrace trace;
    return dispatch(design, unit_pv, load, bat, trace);
}

double compute_llp(const SimulationTotals& totals) noexcept {
    if (totals.total_load <= 0.0) return 0.0;
    return std::clamp(totals.total_deficit / totals.total_load, 0.0, 1.0);
}

}  // namespace sspvb
