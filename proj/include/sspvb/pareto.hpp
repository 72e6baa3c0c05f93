#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sspvb/random.hpp"

namespace sspvb {

/// Objective values, all minimized. For the sizing problem index 0 is COE
/// (USD/kWh) and index 1 is LLP (fraction). +inf is the penalty sentinel and
/// compares worse than every finite value.
using ObjectivePoint = std::vector<double>;

/// A decision vector together with its objectives.
struct Solution {
    std::vector<double> decision;
    ObjectivePoint objectives;
};

/// Pareto dominance under minimization. Throws InputError on dimension mismatch.
[[nodiscard]] bool dominates(std::span<const double> a, std::span<const double> b);

/// Fast non-dominated sort. Fronts hold indices into `points`, each front in
/// ascending index order; front 0 is the non-dominated set.
[[nodiscard]] std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const ObjectivePoint> points);

/// Crowding distance of each point within one front. Extremes of every
/// objective get +inf; objectives with zero (or non-finite) range add nothing.
[[nodiscard]] std::vector<double> crowding_distance(std::span<const ObjectivePoint> front);

/// Area dominated by a 2-D front and bounded by `reference`. Dominated points
/// in `front` are tolerated and add nothing. Throws InputError if a point does
/// not dominate the reference or is not 2-D.
[[nodiscard]] double hypervolume_2d(std::span<const ObjectivePoint> front, const ObjectivePoint& reference);

/// Indices of the mutually non-dominated subset, in ascending order. Among
/// exactly equal objective vectors only the first occurrence is kept.
[[nodiscard]] std::vector<std::size_t> nondominated_indices(std::span<const ObjectivePoint> points);

/// Bounded external archive with an adaptive hypercube grid in objective space.
/// Holds only mutually non-dominated, pairwise-distinct objective vectors.
class ParetoArchive {
public:
    enum class InsertOutcome { dominated, duplicate, inserted, inserted_with_eviction };

    explicit ParetoArchive(std::size_t capacity = 100, std::size_t grid_divisions = 7);

    /// Rejects candidates dominated by (or equal to) an entry, otherwise removes
    /// the entries the candidate dominates and appends it. Over capacity, one
    /// entry chosen uniformly from the most crowded grid cell is evicted.
    InsertOutcome insert(Solution candidate, Rng& rng);

    /// Roulette over occupied grid cells with weight 1/occupancy, then a
    /// uniform member of the chosen cell. Archive must be non-empty.
    [[nodiscard]] const Solution& select_leader(Rng& rng) const;

    /// Linearized grid cell of every entry for the current objective bounds.
    [[nodiscard]] std::vector<std::size_t> grid_cells() const;

    [[nodiscard]] const std::vector<Solution>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
    [[nodiscard]] std::size_t grid_divisions() const noexcept { return divisions_; }

private:
    void evict_from_densest_cell(Rng& rng);

    std::vector<Solution> entries_;
    std::size_t capacity_;
    std::size_t divisions_;
};

}  // namespace sspvb

namespace sspvb {

/// Index of the point closest to the ideal point after normalizing each
/// objective to [0, 1] over the finite values present. Points with non-finite
/// objectives are never chosen unless nothing else exists. Empty input -> npos.
[[nodiscard]] std::size_t knee_index(std::span<const ObjectivePoint> points);

}  // namespace sspvb
