#include "sspvb/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sspvb/error.hpp"
#include "sspvb/random.hpp"

namespace sspvb {

namespace {

constexpr double kEps = 1e-14;

/// Ranks and crowding over `pool`, then keeps `target` members front by front,
/// truncating the split front by descending crowding distance.
std::vector<Individual> environmental_selection(std::vector<Individual> pool, std::size_t target) {
    std::vector<ObjectivePoint> points;
    points.reserve(pool.size());
    for (const auto& ind : pool) points.push_back(ind.objectives);
    const auto fronts = non_dominated_sort(points);

    std::vector<Individual> next;
    next.reserve(target);
    for (std::size_t r = 0; r < fronts.size() && next.size() < target; ++r) {
        const auto& front = fronts[r];
        std::vector<ObjectivePoint> front_points;
        front_points.reserve(front.size());
        for (std::size_t i : front) front_points.push_back(points[i]);
        const auto distance = crowding_distance(front_points);
        for (std::size_t k = 0; k < front.size(); ++k) {
            pool[front[k]].rank = r;
            pool[front[k]].crowding = distance[k];
        }
        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        if (next.size() + front.size() > target)
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return distance[a] > distance[b]; });
        for (std::size_t k : order) {
            if (next.size() == target) break;
            next.push_back(std::move(pool[front[k]]));
        }
    }
    return next;
}

const Individual& tournament(const std::vector<Individual>& pop, Rng& rng) {
    const Individual& a = pop[rng.index(pop.size())];
    const Individual& b = pop[rng.index(pop.size())];
    if (a.rank != b.rank) return a.rank < b.rank ? a : b;
    if (a.crowding != b.crowding) return a.crowding > b.crowding ? a : b;
    return rng.bernoulli(0.5) ? a : b;
}

}  // namespace

void Nsga2Params::validate() const {
    if (population == 0 || population % 2 != 0) throw InputError("nsga2.population must be even and > 0");
    if (generations == 0) throw InputError("nsga2.generations must be > 0");
    if (crossover_prob < 0.0 || crossover_prob > 1.0) throw InputError("nsga2.crossover_prob must lie in [0, 1]");
    if (mutation_prob > 1.0) throw InputError("nsga2.mutation_prob must be <= 1");
    if (crossover_eta < 0.0 || mutation_eta < 0.0) throw InputError("nsga2 distribution indices must be >= 0");
}

void sbx_crossover(std::vector<double>& a, std::vector<double>& b, std::span<const Variable> vars, double eta,
                   Rng& rng) {
    for (std::size_t k = 0; k < vars.size(); ++k) {
        if (!rng.bernoulli(0.5)) continue;
        const double lo = vars[k].lower;
        const double hi = vars[k].upper;
        if (std::fabs(a[k] - b[k]) <= kEps || hi - lo <= 0.0) continue;

        const double y1 = std::min(a[k], b[k]);
        const double y2 = std::max(a[k], b[k]);
        const double u = rng.uniform01();
        auto spread = [&](double beta) {
            const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
            return u <= 1.0 / alpha ? std::pow(u * alpha, 1.0 / (eta + 1.0))
                                    : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
        };
        const double beta_low = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
        const double beta_high = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
        double c1 = 0.5 * ((y1 + y2) - spread(beta_low) * (y2 - y1));
        double c2 = 0.5 * ((y1 + y2) + spread(beta_high) * (y2 - y1));
        c1 = std::clamp(c1, lo, hi);
        c2 = std::clamp(c2, lo, hi);
        if (rng.bernoulli(0.5)) std::swap(c1, c2);
        a[k] = c1;
        b[k] = c2;
    }
}

void polynomial_mutation(std::vector<double>& x, std::span<const Variable> vars, double prob, double eta, Rng& rng) {
    const double power = 1.0 / (eta + 1.0);
    for (std::size_t k = 0; k < vars.size(); ++k) {
        if (!rng.bernoulli(prob)) continue;
        const double lo = vars[k].lower;
        const double hi = vars[k].upper;
        const double range = hi - lo;
        if (range <= 0.0) continue;
        const double y = x[k];
        const double delta1 = (y - lo) / range;
        const double delta2 = (hi - y) / range;
        const double u = rng.uniform01();
        double deltaq = 0.0;
        if (u < 0.5) {
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - delta1, eta + 1.0);
            deltaq = std::pow(val, power) - 1.0;
        } else {
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - delta2, eta + 1.0);
            deltaq = 1.0 - std::pow(val, power);
        }
        x[k] = std::clamp(y + deltaq * range, lo, hi);
    }
}

std::vector<Solution> run_nsga2(const Problem& problem, const Nsga2Params& params, const Nsga2Observer& observer) {
    params.validate();
    const auto& vars = problem.variables();
    validate_variables(vars);
    const std::size_t dims = vars.size();
    const std::size_t n = params.population;
    const double mutation_prob = params.mutation_prob < 0.0 ? 1.0 / static_cast<double>(dims) : params.mutation_prob;

    Rng rng(params.seed);
    auto evaluate_all = [&](std::vector<Individual>& group) {
        std::vector<std::vector<double>> decisions;
        decisions.reserve(group.size());
        for (auto& ind : group) {
            ind.decision = snap_to_grid(vars, ind.genome);
            decisions.push_back(ind.decision);
        }
        auto objectives = evaluate_batch(problem, decisions, params.threads);
        for (std::size_t i = 0; i < group.size(); ++i) group[i].objectives = std::move(objectives[i]);
    };

    std::vector<Individual> population(n);
    for (auto& ind : population) {
        ind.genome.resize(dims);
        for (std::size_t k = 0; k < dims; ++k) ind.genome[k] = rng.uniform(vars[k].lower, vars[k].upper);
    }
    evaluate_all(population);
    population = environmental_selection(std::move(population), n);
    if (observer) observer({0, population});

    for (std::size_t gen = 1; gen <= params.generations; ++gen) {
        std::vector<Individual> offspring;
        offspring.reserve(n);
        while (offspring.size() < n) {
            Individual a;
            Individual b;
            a.genome = tournament(population, rng).genome;
            b.genome = tournament(population, rng).genome;
            if (rng.bernoulli(params.crossover_prob))
                sbx_crossover(a.genome, b.genome, vars, params.crossover_eta, rng);
            polynomial_mutation(a.genome, vars, mutation_prob, params.mutation_eta, rng);
            polynomial_mutation(b.genome, vars, mutation_prob, params.mutation_eta, rng);
            offspring.push_back(std::move(a));
            offspring.push_back(std::move(b));
        }
        evaluate_all(offspring);

        std::vector<Individual> merged = std::move(population);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        population = environmental_selection(std::move(merged), n);
        if (observer) observer({gen, population});
    }

    std::vector<ObjectivePoint> points;
    for (const auto& ind : population)
        if (ind.rank == 0) points.push_back(ind.objectives);
    std::vector<Solution> front;
    std::vector<const Individual*> members;
    for (const auto& ind : population)
        if (ind.rank == 0) members.push_back(&ind);
    for (std::size_t i : nondominated_indices(points)) front.push_back({members[i]->decision, members[i]->objectives});
    return front;
}

}  // namespace sspvb
