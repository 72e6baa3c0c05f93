#include "sspvb/sizing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sspvb/error.hpp"

namespace sspvb {

void SizingModel::validate() const {
    dataset.validate();
    pv.validate();
    battery.validate();
    costs.validate();
}

void SizingBounds::validate() const {
    if (n_pv_max < 0 || n_bes_max < 0) throw InputError("bounds: unit count maxima must be >= 0");
    if (!(dod.min > 0.0 && dod.min <= dod.max && dod.max <= 1.0))
        throw InputError("bounds: dod range must satisfy 0 < min <= max <= 1");
    if (!(dod_step >= 0.0)) throw InputError("bounds: dod step must be >= 0");
}

SizingBounds default_bounds(const SizingModel& model) {
    SizingBounds b;
    b.n_pv_max = static_cast<long>(std::ceil(10.0 * model.dataset.peak_load() / model.pv.rated_power_per_unit));
    b.n_bes_max =
        static_cast<long>(std::ceil(20.0 * model.dataset.mean_daily_load() / model.battery.capacity_per_unit));
    return b;
}

Design design_from_decision(std::span<const double> decision) {
    if (decision.size() != 3) throw InputError("sizing decision must have 3 components");
    return {std::lround(decision[0]), std::lround(decision[1]), decision[2]};
}

std::vector<double> decision_from_design(const Design& design) {
    return {static_cast<double>(design.n_pv), static_cast<double>(design.n_bes), design.dod};
}

SizingProblem::SizingProblem(SizingModel model, SizingBounds bounds)
    : model_(std::move(model)), bounds_(bounds) {
    model_.validate();
    bounds_.validate();
    variables_ = {
        {0.0, static_cast<double>(bounds_.n_pv_max), 1.0},
        {0.0, static_cast<double>(bounds_.n_bes_max), 1.0},
        {bounds_.dod.min, bounds_.dod.max, bounds_.dod_step},
    };
    unit_pv_ = unit_pv_profile(model_.dataset, model_.pv);
}

ObjectivePoint SizingProblem::evaluate(std::span<const double> decision) const {
    const auto eval = evaluate_design(design_from_decision(decision));
    return {eval.coe, eval.llp};
}

DesignEvaluation SizingProblem::evaluate_design(const Design& design) const {
    validate_design(design, {0.0, 1.0});
    DesignEvaluation out;
    out.design = design;
    out.totals = simulate_totals(design, unit_pv_, model_.dataset.load, model_.battery);
    out.llp = compute_llp(out.totals);
    const double life = battery_life_years(out.totals, design, model_.battery);
    out.cost = annualized_total_cost(design, life, model_.costs);
    out.energy = annual_energy(out.totals, model_.energy_basis);
    out.coe = compute_coe(out.cost.atc, out.energy, model_.coe_penalty);
    return out;
}

FixedDodProblem::FixedDodProblem(const SizingProblem& base, double dod, double epsilon)
    : base_(&base), dod_(dod), epsilon_(epsilon) {
    if (!(epsilon >= 0.0)) throw InputError("epsilon must be >= 0");
    validate_design({0, 0, dod}, base.bounds().dod);
    const auto& vars = base.variables();
    variables_ = {vars[0], vars[1]};
}

Design FixedDodProblem::design(std::span<const double> decision) const {
    return {std::lround(decision[0]), std::lround(decision[1]), dod_};
}

ObjectivePoint FixedDodProblem::evaluate(std::span<const double> decision) const {
    const auto eval = base_->evaluate_design(design(decision));
    return {eval.coe, std::max(0.0, eval.llp - epsilon_)};
}

std::string to_string(Algorithm algorithm) {
    return algorithm == Algorithm::mopso ? "mopso" : "nsga2";
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "mopso") return Algorithm::mopso;
    if (name == "nsga2") return Algorithm::nsga2;
    throw InputError("unknown algorithm '" + name + "' (expected mopso or nsga2)");
}

std::vector<Solution> optimize(const Problem& problem, Algorithm algorithm, const OptimizerSettings& settings) {
    if (algorithm == Algorithm::mopso) return run_mopso(problem, settings.mopso).entries();
    return run_nsga2(problem, settings.nsga2);
}

std::vector<SweepRow> dod_sweep(const SizingProblem& problem, std::span<const double> dod_values, double epsilon,
                                Algorithm algorithm, const OptimizerSettings& settings) {
    std::vector<SweepRow> rows;
    rows.reserve(dod_values.size());
    for (double dod : dod_values) {
        const FixedDodProblem reduced(problem, dod, epsilon);
        const auto front = optimize(reduced, algorithm, settings);

        SweepRow row;
        row.dod = dod;
        const Solution* best = nullptr;
        for (const auto& s : front) {
            if (s.objectives[1] > 0.0) continue;
            if (best == nullptr || s.objectives[0] < best->objectives[0]) best = &s;
        }
        if (best != nullptr) {
            const auto design = reduced.design(best->decision);
            const auto eval = problem.evaluate_design(design);
            row.n_pv = design.n_pv;
            row.n_bes = design.n_bes;
            row.coe = eval.coe;
            row.llp = eval.llp;
            row.feasible = true;
        } else {
            // report the least-violating design found
            const auto least = std::min_element(front.begin(), front.end(), [](const auto& a, const auto& b) {
                return a.objectives[1] < b.objectives[1];
            });
            if (least != front.end()) {
                const auto design = reduced.design(least->decision);
                const auto eval = problem.evaluate_design(design);
                row.n_pv = design.n_pv;
                row.n_bes = design.n_bes;
                row.coe = eval.coe;
                row.llp = eval.llp;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<Solution> brute_force_front(const SizingProblem& problem, const DesignGrid& grid, unsigned threads,
                                        std::size_t cap) {
    if (grid.size() == 0) throw InputError("brute-force grid is empty");
    if (grid.size() > cap)
        throw InputError("brute-force grid has " + std::to_string(grid.size()) + " points, cap is " +
                         std::to_string(cap));
    std::vector<std::vector<double>> decisions;
    decisions.reserve(grid.size());
    for (long n_pv : grid.n_pv)
        for (long n_bes : grid.n_bes)
            for (double dod : grid.dod) decisions.push_back(decision_from_design({n_pv, n_bes, dod}));

    const auto objectives = evaluate_batch(problem, decisions, threads);
    const auto fronts = non_dominated_sort(objectives);
    std::vector<Solution> front;
    front.reserve(fronts.front().size());
    for (std::size_t i : fronts.front()) front.push_back({decisions[i], objectives[i]});
    return front;
}

std::vector<double> linspace_step(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw InputError("range needs step > 0 and hi >= lo");
    std::vector<double> out;
    for (long k = 0;; ++k) {
        const double v = lo + static_cast<double>(k) * step;
        if (v > hi + 1e-9 * step) break;
        out.push_back(v);
    }
    return out;
}

}  // namespace sspvb
