#pragma once

#include <cstdint>
#include <limits>

#include "sspvb/simulation.hpp"
#include "sspvb/system.hpp"

namespace sspvb {

inline constexpr double kCoePenalty = std::numeric_limits<double>::infinity();

struct CostBreakdown {
    double annualized_capital = 0.0;      // USD/yr
    double annualized_replacement = 0.0;  // USD/yr
    double annual_om = 0.0;               // USD/yr
    double atc = 0.0;                     // USD/yr
    double battery_life = 0.0;            // years
    std::int64_t replacements = 0;
};

/// Which energy total divides the annualized cost.
enum class EnergyBasis {
    served,      // load actually supplied (total load minus deficits)
    total_load,  // all load demanded
};

/// Capital recovery factor; 1/years in the zero-interest limit.
[[nodiscard]] double crf(double discount_rate, double years);

/// cycle_life_a * dod^-cycle_life_b. Throws InputError unless 0 < dod <= 1.
[[nodiscard]] double battery_cycle_life(double dod, const BatterySpec& spec);

/// Equivalent full-window cycles per year: discharge throughput over the usable
/// window (n_bes * capacity * dod), scaled to 8760 h when the simulated horizon
/// is shorter or longer than a year.
[[nodiscard]] double cycles_per_year(const SimulationTotals& totals, const Design& design, const BatterySpec& spec);

/// Service life in years: the lesser of float life and cycle-limited life.
/// Always strictly positive.
[[nodiscard]] double battery_life_years(const SimulationTotals& totals, const Design& design,
                                        const BatterySpec& spec);

/// Capital, replacement and O&M costs spread uniformly over the project life.
/// Each battery replacement is discounted from its install year (j * life) and
/// re-annualized with the project CRF. Remaining life at project end earns no
/// salvage credit.
[[nodiscard]] CostBreakdown annualized_total_cost(const Design& design, double battery_life,
                                                  const CostParams& costs);

/// ATC over annual energy. Returns `penalty` when energy is zero.
[[nodiscard]] double compute_coe(double atc, double energy, double penalty = kCoePenalty);

/// Energy for the COE denominator, scaled to a full year.
[[nodiscard]] double annual_energy(const SimulationTotals& totals, EnergyBasis basis) noexcept;

}  // namespace sspvb
