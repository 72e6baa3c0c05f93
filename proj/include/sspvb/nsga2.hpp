#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sspvb/pareto.hpp"
#include "sspvb/problem.hpp"

namespace sspvb {

struct Nsga2Params {
    std::size_t population = 100;
    std::size_t generations = 150;
    double crossover_prob = 0.9;
    double crossover_eta = 15.0;
    double mutation_prob = -1.0;  // negative: 1 / number of variables
    double mutation_eta = 20.0;
    std::uint64_t seed = 1;
    unsigned threads = 1;

    void validate() const;
};

struct Individual {
    std::vector<double> genome;    // continuous search position
    std::vector<double> decision;  // genome snapped to the variable grid
    ObjectivePoint objectives;
    std::size_t rank = 0;
    double crowding = 0.0;
};

/// Population after initialization (generation 0) and after each generation.
struct Nsga2Snapshot {
    std::size_t generation;
    std::span<const Individual> population;
};

using Nsga2Observer = std::function<void(const Nsga2Snapshot&)>;

/// Simulated binary crossover on one pair, bounded form. Variables with zero
/// range are left untouched.
void sbx_crossover(std::vector<double>& a, std::vector<double>& b, std::span<const Variable> vars, double eta,
                   Rng& rng);

/// Bounded polynomial mutation applied per variable with probability `prob`.
void polynomial_mutation(std::vector<double>& x, std::span<const Variable> vars, double prob, double eta, Rng& rng);

/// Elitist non-dominated sorting GA. Returns the first front of the final
/// population with exact objective duplicates removed.
[[nodiscard]] std::vector<Solution> run_nsga2(const Problem& problem, const Nsga2Params& params,
                                              const Nsga2Observer& observer = {});

}  // namespace sspvb
