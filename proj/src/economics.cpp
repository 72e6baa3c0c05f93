#include "sspvb/economics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sspvb/error.hpp"

namespace sspvb {

namespace {

double year_scale(const SimulationTotals& totals) noexcept {
    return totals.hours == 0 ? 1.0 : static_cast<double>(kHoursPerYear) / static_cast<double>(totals.hours);
}

}  // namespace

double crf(double discount_rate, double years) {
    if (!(years > 0.0)) throw InputError("crf: years must be > 0");
    if (!(discount_rate >= 0.0)) throw InputError("crf: discount rate must be >= 0");
    if (discount_rate == 0.0) return 1.0 / years;
    const double growth = std::pow(1.0 + discount_rate, years);
    return discount_rate * growth / (growth - 1.0);
}

double battery_cycle_life(double dod, const BatterySpec& spec) {
    if (!(dod > 0.0 && dod <= 1.0))
        throw InputError("battery_cycle_life: dod must lie in (0, 1], got " + std::to_string(dod));
    return spec.cycle_life_a * std::pow(dod, -spec.cycle_life_b);
}

double cycles_per_year(const SimulationTotals& totals, const Design& design, const BatterySpec& spec) {
    const double window = static_cast<double>(design.n_bes) * spec.capacity_per_unit * design.dod;
    if (design.n_bes == 0 || window <= 0.0 || totals.discharge_throughput <= 0.0) return 0.0;
    return totals.discharge_throughput * year_scale(totals) / window;
}

double battery_life_years(const SimulationTotals& totals, const Design& design, const BatterySpec& spec) {
    const double cycles = cycles_per_year(totals, design, spec);
    if (cycles == 0.0) return spec.float_life;
    const double life = std::min(spec.float_life, battery_cycle_life(design.dod, spec) / cycles);
    return std::max(life, std::numeric_limits<double>::min());
}

CostBreakdown annualized_total_cost(const Design& design, double battery_life, const CostParams& costs) {
    if (!(battery_life > 0.0)) throw InputError("annualized_total_cost: battery life must be > 0");
    const double i = costs.discount_rate;
    const double n_bes = static_cast<double>(design.n_bes);
    const double capital = static_cast<double>(design.n_pv) * costs.pv_unit_cost + n_bes * costs.bes_unit_cost +
                           costs.converter_cost;
    const double recovery = crf(i, costs.project_life);

    CostBreakdown out;
    out.battery_life = battery_life;

    double replacements = 0.0;
    if (battery_life < costs.project_life) replacements = std::ceil(costs.project_life / battery_life) - 1.0;
    out.replacements = static_cast<std::int64_t>(std::min(replacements, 9.0e18));

    // sum_{j=1..r} q^j with q = (1+i)^-life, in closed form
    double discounted_units = 0.0;
    if (replacements > 0.0) {
        if (i == 0.0) {
            discounted_units = replacements;
        } else {
            const double q = std::pow(1.0 + i, -battery_life);
            discounted_units = q * (1.0 - std::pow(q, replacements)) / (1.0 - q);
        }
    }
    const double replacement_pv = n_bes * costs.bes_replacement_cost * discounted_units;

    out.annualized_capital = capital * recovery;
    out.annualized_replacement = replacement_pv * recovery;
    out.annual_om = costs.om_frac * capital;
    out.atc = out.annualized_capital + out.annualized_replacement + out.annual_om;
    return out;
}

double compute_coe(double atc, double energy, double penalty) {
    if (energy < 0.0) throw InputError("compute_coe: energy must be >= 0");
    if (energy == 0.0) return penalty;
    return atc / energy;
}

double annual_energy(const SimulationTotals& totals, EnergyBasis basis) noexcept {
    const double energy = basis == EnergyBasis::served ? totals.served_energy : totals.total_load;
    return std::max(0.0, energy) * year_scale(totals);
}

}  // namespace sspvb
