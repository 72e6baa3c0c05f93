#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sspvb/economics.hpp"
#include "sspvb/mopso.hpp"
#include "sspvb/nsga2.hpp"
#include "sspvb/problem.hpp"
#include "sspvb/simulation.hpp"
#include "sspvb/system.hpp"

namespace sspvb {

/// Everything a design evaluation depends on besides the design itself.
struct SizingModel {
    AnnualDataset dataset;
    PVSpec pv;
    BatterySpec battery;
    CostParams costs;
    EnergyBasis energy_basis = EnergyBasis::served;
    double coe_penalty = kCoePenalty;

    void validate() const;
};

/// Search box for (n_pv, n_bes, dod). Counts are integer variables; dod is
/// continuous unless `dod_step` > 0.
struct SizingBounds {
    long n_pv_max = 0;
    long n_bes_max = 0;
    DodBounds dod;
    double dod_step = 0.0;

    void validate() const;
};

/// n_pv up to 10 x peak load over unit rating, n_bes up to 20 x mean daily
/// load over unit capacity, dod in [0.20, 0.80].
[[nodiscard]] SizingBounds default_bounds(const SizingModel& model);

/// Every intermediate quantity behind one (COE, LLP) point.
struct DesignEvaluation {
    Design design;
    SimulationTotals totals;
    CostBreakdown cost;
    double energy = 0.0;  // annual kWh in the COE denominator
    double coe = 0.0;
    double llp = 0.0;
};

[[nodiscard]] Design design_from_decision(std::span<const double> decision);
[[nodiscard]] std::vector<double> decision_from_design(const Design& design);

/// Design -> (COE, LLP). Decision vector layout is (n_pv, n_bes, dod).
class SizingProblem final : public Problem {
public:
    SizingProblem(SizingModel model, SizingBounds bounds);

    [[nodiscard]] const std::vector<Variable>& variables() const override { return variables_; }
    [[nodiscard]] std::size_t objective_count() const override { return 2; }
    [[nodiscard]] ObjectivePoint evaluate(std::span<const double> decision) const override;

    [[nodiscard]] DesignEvaluation evaluate_design(const Design& design) const;

    [[nodiscard]] const SizingModel& model() const noexcept { return model_; }
    [[nodiscard]] const SizingBounds& bounds() const noexcept { return bounds_; }

private:
    SizingModel model_;
    SizingBounds bounds_;
    std::vector<Variable> variables_;
    std::vector<double> unit_pv_;
};

/// (n_pv, n_bes) at a frozen dod, minimizing (COE, max(0, LLP - epsilon)).
/// Every feasible design scores 0 on the second objective, so the feasible end
/// of its front is the cheapest design meeting the reliability target.
class FixedDodProblem final : public Problem {
public:
    FixedDodProblem(const SizingProblem& base, double dod, double epsilon);

    [[nodiscard]] const std::vector<Variable>& variables() const override { return variables_; }
    [[nodiscard]] std::size_t objective_count() const override { return 2; }
    [[nodiscard]] ObjectivePoint evaluate(std::span<const double> decision) const override;

    [[nodiscard]] Design design(std::span<const double> decision) const;

private:
    const SizingProblem* base_;
    double dod_;
    double epsilon_;
    std::vector<Variable> variables_;
};

enum class Algorithm { mopso, nsga2 };

[[nodiscard]] std::string to_string(Algorithm algorithm);
[[nodiscard]] Algorithm parse_algorithm(const std::string& name);

struct OptimizerSettings {
    MopsoParams mopso;
    Nsga2Params nsga2;
};

/// Runs the chosen optimizer and returns its final non-dominated set.
[[nodiscard]] std::vector<Solution> optimize(const Problem& problem, Algorithm algorithm,
                                             const OptimizerSettings& settings);

struct SweepRow {
    double dod = 0.0;
    long n_pv = 0;
    long n_bes = 0;
    double coe = 0.0;
    double llp = 0.0;
    bool feasible = false;  // false: no design found with llp <= epsilon
};

/// One epsilon-constrained COE minimization per dod value.
[[nodiscard]] std::vector<SweepRow> dod_sweep(const SizingProblem& problem, std::span<const double> dod_values,
                                              double epsilon, Algorithm algorithm,
                                              const OptimizerSettings& settings);

/// Candidate values per decision variable for exhaustive enumeration.
struct DesignGrid {
    std::vector<long> n_pv;
    std::vector<long> n_bes;
    std::vector<double> dod;

    [[nodiscard]] std::size_t size() const noexcept { return n_pv.size() * n_bes.size() * dod.size(); }
};

inline constexpr std::size_t kBruteForceCap = 100'000;

/// Evaluates every grid point and returns all points no other grid point
/// dominates, in enumeration order (n_pv outermost, dod innermost). Refuses
/// grids larger than `cap`.
[[nodiscard]] std::vector<Solution> brute_force_front(const SizingProblem& problem, const DesignGrid& grid,
                                                      unsigned threads = 1, std::size_t cap = kBruteForceCap);

/// Inclusive arithmetic range lo, lo + step, ... <= hi (with a small tolerance
/// on the upper end).
[[nodiscard]] std::vector<double> linspace_step(double lo, double hi, double step);

}  // namespace sspvb
