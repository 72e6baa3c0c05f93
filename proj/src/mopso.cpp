#include "sspvb/mopso.hpp"

#include <algorithm>

#include "sspvb/error.hpp"
#include "sspvb/random.hpp"

namespace sspvb {

void MopsoParams::validate() const {
    if (swarm_size == 0) throw InputError("mopso.swarm_size must be > 0");
    if (iterations == 0) throw InputError("mopso.iterations must be > 0");
    if (c1 < 0.0 || c2 < 0.0) throw InputError("mopso.c1 and mopso.c2 must be >= 0");
    if (archive_capacity == 0) throw InputError("mopso.archive_capacity must be > 0");
    if (grid_divisions == 0) throw InputError("mopso.grid_divisions must be > 0");
    if (mutation_rate < 0.0 || mutation_rate > 1.0) throw InputError("mopso.mutation_rate must lie in [0, 1]");
}

ParetoArchive run_mopso(const Problem& problem, const MopsoParams& params, const MopsoObserver& observer) {
    params.validate();
    const auto& vars = problem.variables();
    validate_variables(vars);
    const std::size_t dims = vars.size();

    Rng rng(params.seed);
    ParetoArchive archive(params.archive_capacity, params.grid_divisions);
    std::vector<Particle> swarm(params.swarm_size);
    std::vector<std::vector<double>> evaluated(params.swarm_size);

    for (std::size_t p = 0; p < swarm.size(); ++p) {
        auto& particle = swarm[p];
        particle.position.resize(dims);
        particle.velocity.assign(dims, 0.0);
        for (std::size_t k = 0; k < dims; ++k) particle.position[k] = rng.uniform(vars[k].lower, vars[k].upper);
        evaluated[p] = snap_to_grid(vars, particle.position);
    }
    auto objectives = evaluate_batch(problem, evaluated, params.threads);
    for (std::size_t p = 0; p < swarm.size(); ++p) {
        swarm[p].best_position = swarm[p].position;
        swarm[p].best_objectives = objectives[p];
        archive.insert({evaluated[p], objectives[p]}, rng);
    }
    if (observer) observer({0, swarm, archive});

    const double last = static_cast<double>(std::max<std::size_t>(params.iterations - 1, 1));
    for (std::size_t it = 0; it < params.iterations; ++it) {
        const double progress = static_cast<double>(it) / last;
        const double inertia = params.inertia_start + (params.inertia_end - params.inertia_start) * progress;
        const double mutation_fraction =
            params.mutation_rate * (1.0 - static_cast<double>(it) / static_cast<double>(params.iterations));

        for (std::size_t p = 0; p < swarm.size(); ++p) {
            auto& particle = swarm[p];
            const std::vector<double>& leader =
                archive.empty() ? particle.best_position : archive.select_leader(rng).decision;
            for (std::size_t k = 0; k < dims; ++k) {
                const double r1 = rng.uniform01();
                const double r2 = rng.uniform01();
                double& v = particle.velocity[k];
                double& x = particle.position[k];
                v = inertia * v + params.c1 * r1 * (particle.best_position[k] - x) + params.c2 * r2 * (leader[k] - x);
                x += v;
                if (x < vars[k].lower) {
                    x = vars[k].lower;
                    v = 0.0;
                } else if (x > vars[k].upper) {
                    x = vars[k].upper;
                    v = 0.0;
                }
            }
            if (rng.bernoulli(mutation_fraction)) {
                const std::size_t k = rng.index(dims);
                particle.position[k] = rng.uniform(vars[k].lower, vars[k].upper);
            }
            evaluated[p] = snap_to_grid(vars, particle.position);
        }

        objectives = evaluate_batch(problem, evaluated, params.threads);

        for (std::size_t p = 0; p < swarm.size(); ++p) {
            auto& particle = swarm[p];
            if (dominates(objectives[p], particle.best_objectives)) {
                particle.best_position = particle.position;
                particle.best_objectives = objectives[p];
            }
            archive.insert({evaluated[p], objectives[p]}, rng);
        }
        if (observer) observer({it + 1, swarm, archive});
    }
    return archive;
}

}  // namespace sspvb
