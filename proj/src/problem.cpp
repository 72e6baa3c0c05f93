#include "sspvb/problem.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "sspvb/error.hpp"

namespace sspvb {

FunctionProblem::FunctionProblem(std::vector<Variable> variables, std::size_t objectives, Objective fn)
    : variables_(std::move(variables)), objectives_(objectives), fn_(std::move(fn)) {
    validate_variables(variables_);
    if (objectives_ < 1) throw InputError("problem needs at least one objective");
}

void validate_variables(std::span<const Variable> variables) {
    if (variables.empty()) throw InputError("problem has no decision variables");
    for (std::size_t k = 0; k < variables.size(); ++k) {
        const auto& v = variables[k];
        if (!std::isfinite(v.lower) || !std::isfinite(v.upper) || v.lower > v.upper)
            throw InputError("variable " + std::to_string(k) + " has invalid bounds");
        if (!(v.step >= 0.0) || !std::isfinite(v.step))
            throw InputError("variable " + std::to_string(k) + " has invalid step");
    }
}

std::vector<double> snap_to_grid(std::span<const Variable> variables, std::span<const double> x) {
    std::vector<double> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const auto& v = variables[k];
        double value = std::clamp(x[k], v.lower, v.upper);
        if (v.step > 0.0) {
            const double steps = std::round((value - v.lower) / v.step);
            value = v.lower + steps * v.step;
            if (value > v.upper) value = v.lower + (steps - 1.0) * v.step;
            value = std::clamp(value, v.lower, v.upper);
        }
        out[k] = value;
    }
    return out;
}

std::vector<ObjectivePoint> evaluate_batch(const Problem& problem, std::span<const std::vector<double>> decisions,
                                           unsigned threads) {
    std::vector<ObjectivePoint> out(decisions.size());
    const std::size_t n = decisions.size();
    const std::size_t workers = std::min<std::size_t>(threads == 0 ? 1 : threads, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = problem.evaluate(decisions[i]);
        return out;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers) out[i] = problem.evaluate(decisions[i]);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace sspvb
