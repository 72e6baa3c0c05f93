#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sspvb/pareto.hpp"

namespace sspvb {

/// Box bounds for one decision variable. A positive `step` restricts the
/// evaluated value to lower + k * step (step 1 with an integral lower bound is
/// an integer variable); the search itself stays continuous.
struct Variable {
    double lower = 0.0;
    double upper = 1.0;
    double step = 0.0;
};

/// Multi-objective minimization problem shared by both optimizers.
/// `evaluate` receives already-snapped decisions and must be pure and
/// thread-safe.
class Problem {
public:
    virtual ~Problem() = default;
    [[nodiscard]] virtual const std::vector<Variable>& variables() const = 0;
    [[nodiscard]] virtual std::size_t objective_count() const = 0;
    [[nodiscard]] virtual ObjectivePoint evaluate(std::span<const double> decision) const = 0;
};

/// Problem backed by a callable. Mostly for benchmarks and tests.
class FunctionProblem final : public Problem {
public:
    using Objective = std::function<ObjectivePoint(std::span<const double>)>;

    FunctionProblem(std::vector<Variable> variables, std::size_t objectives, Objective fn);

    [[nodiscard]] const std::vector<Variable>& variables() const override { return variables_; }
    [[nodiscard]] std::size_t objective_count() const override { return objectives_; }
    [[nodiscard]] ObjectivePoint evaluate(std::span<const double> decision) const override { return fn_(decision); }

private:
    std::vector<Variable> variables_;
    std::size_t objectives_;
    Objective fn_;
};

/// Throws InputError unless every bound is finite with lower <= upper and
/// steps are non-negative.
void validate_variables(std::span<const Variable> variables);

/// Clamp into bounds and round stepped variables to their nearest grid value.
[[nodiscard]] std::vector<double> snap_to_grid(std::span<const Variable> variables, std::span<const double> x);

/// Evaluates every decision, fanning out over `threads` workers (0 or 1 means
/// serial). Output order matches input order regardless of thread count.
[[nodiscard]] std::vector<ObjectivePoint> evaluate_batch(const Problem& problem,
                                                         std::span<const std::vector<double>> decisions,
                                                         unsigned threads);

}  // namespace sspvb
