#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sspvb/pareto.hpp"
#include "sspvb/problem.hpp"

namespace sspvb {

struct MopsoParams {
    std::size_t swarm_size = 100;
    std::size_t iterations = 150;
    double inertia_start = 0.9;
    double inertia_end = 0.4;
    double c1 = 2.0;
    double c2 = 2.0;
    std::size_t archive_capacity = 100;
    std::size_t grid_divisions = 7;
    double mutation_rate = 0.1;
    std::uint64_t seed = 1;
    unsigned threads = 1;

    void validate() const;
};

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    ObjectivePoint best_objectives;
};

/// State handed to an observer after initialization (iteration 0) and after
/// every completed iteration.
struct MopsoSnapshot {
    std::size_t iteration;
    std::span<const Particle> swarm;
    const ParetoArchive& archive;
};

using MopsoObserver = std::function<void(const MopsoSnapshot&)>;

/// Multi-objective particle swarm with an adaptive-grid external archive.
/// Leaders are drawn from the archive favouring sparse grid cells; a decaying
/// fraction of particles gets one coordinate reset uniformly each iteration.
/// All random draws happen on the calling thread in a fixed order, so the
/// result depends only on `params.seed`, not on `params.threads`.
[[nodiscard]] ParetoArchive run_mopso(const Problem& problem, const MopsoParams& params,
                                      const MopsoObserver& observer = {});

}  // namespace sspvb
