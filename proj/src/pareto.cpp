#include "sspvb/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "sspvb/error.hpp"

namespace sspvb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_objectives(const ObjectivePoint& a, const ObjectivePoint& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw InputError("dominates: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
    bool strictly_better = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) return false;
        if (a[k] < b[k]) strictly_better = true;
    }
    return strictly_better;
}

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const ObjectivePoint> points) {
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);  // i -> points i dominates
    std::vector<std::size_t> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;
    if (n == 0) return fronts;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j])) {
                dominated_by[i].push_back(j);
                ++domination_count[j];
            } else if (dominates(points[j], points[i])) {
                dominated_by[j].push_back(i);
                ++domination_count[i];
            }
        }
    }

    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (domination_count[i] == 0) current.push_back(i);

    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated_by[i])
                if (--domination_count[j] == 0) next.push_back(j);
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectivePoint> front) {
    const std::size_t n = front.size();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), kInf);
        return distance;
    }
    const std::size_t dims = front.front().size();
    std::vector<std::size_t> order(n);
    for (std::size_t m = 0; m < dims; ++m) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][m] < front[b][m]; });
        distance[order.front()] = kInf;
        distance[order.back()] = kInf;
        const double range = front[order.back()][m] - front[order.front()][m];
        if (!(range > 0.0) || !std::isfinite(range)) continue;
        for (std::size_t k = 1; k + 1 < n; ++k)
            distance[order[k]] += (front[order[k + 1]][m] - front[order[k - 1]][m]) / range;
    }
    return distance;
}

double hypervolume_2d(std::span<const ObjectivePoint> front, const ObjectivePoint& reference) {
    if (reference.size() != 2) throw InputError("hypervolume_2d: reference must be 2-D");
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i : order) {
        if (front[i].size() != 2) throw InputError("hypervolume_2d: point " + std::to_string(i) + " is not 2-D");
        if (!dominates(front[i], reference))
            throw InputError("hypervolume_2d: point " + std::to_string(i) + " does not dominate the reference");
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return front[a][0] != front[b][0] ? front[a][0] < front[b][0] : front[a][1] < front[b][1];
    });
    double area = 0.0;
    double ceiling = reference[1];
    for (std::size_t i : order) {
        const auto& p = front[i];
        if (p[1] < ceiling) {
            area += (reference[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    return area;
}

std::vector<std::size_t> nondominated_indices(std::span<const ObjectivePoint> points) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            if (j == i) continue;
            dominated = dominates(points[j], points[i]) || (j < i && same_objectives(points[j], points[i]));
        }
        if (!dominated) keep.push_back(i);
    }
    return keep;
}

ParetoArchive::ParetoArchive(std::size_t capacity, std::size_t grid_divisions)
    : capacity_(capacity), divisions_(grid_divisions) {
    if (capacity_ == 0) throw InputError("archive capacity must be > 0");
    if (divisions_ == 0) throw InputError("archive grid divisions must be > 0");
}

ParetoArchive::InsertOutcome ParetoArchive::insert(Solution candidate, Rng& rng) {
    for (const auto& e : entries_) {
        if (same_objectives(e.objectives, candidate.objectives)) return InsertOutcome::duplicate;
        if (dominates(e.objectives, candidate.objectives)) return InsertOutcome::dominated;
    }
    std::erase_if(entries_, [&](const Solution& e) { return dominates(candidate.objectives, e.objectives); });
    entries_.push_back(std::move(candidate));
    if (entries_.size() <= capacity_) return InsertOutcome::inserted;
    evict_from_densest_cell(rng);
    return InsertOutcome::inserted_with_eviction;
}

std::vector<std::size_t> ParetoArchive::grid_cells() const {
    std::vector<std::size_t> cells(entries_.size(), 0);
    if (entries_.empty()) return cells;
    const std::size_t dims = entries_.front().objectives.size();
    std::size_t stride = 1;
    for (std::size_t m = 0; m < dims; ++m) {
        double lo = kInf;
        double hi = -kInf;
        for (const auto& e : entries_) {
            const double v = e.objectives[m];
            if (!std::isfinite(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double range = hi - lo;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const double v = entries_[i].objectives[m];
            std::size_t idx = 0;
            if (!std::isfinite(v)) {
                idx = v > 0 ? divisions_ - 1 : 0;
            } else if (range > 0.0) {
                const double scaled = (v - lo) / range * static_cast<double>(divisions_);
                idx = std::min(static_cast<std::size_t>(std::max(scaled, 0.0)), divisions_ - 1);
            }
            cells[i] += idx * stride;
        }
        stride *= divisions_;
    }
    return cells;
}

const Solution& ParetoArchive::select_leader(Rng& rng) const {
    if (entries_.empty()) throw InputError("select_leader: archive is empty");
    const auto cells = grid_cells();
    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < cells.size(); ++i) members[cells[i]].push_back(i);

    double total = 0.0;
    for (const auto& [cell, idx] : members) total += 1.0 / static_cast<double>(idx.size());
    double pick = rng.uniform01() * total;
    const std::vector<std::size_t>* chosen = &members.rbegin()->second;
    for (const auto& [cell, idx] : members) {
        pick -= 1.0 / static_cast<double>(idx.size());
        if (pick < 0.0) {
            chosen = &idx;
            break;
        }
    }
    return entries_[(*chosen)[rng.index(chosen->size())]];
}

void ParetoArchive::evict_from_densest_cell(Rng& rng) {
    const auto cells = grid_cells();
    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < cells.size(); ++i) members[cells[i]].push_back(i);
    const std::vector<std::size_t>* densest = nullptr;
    for (const auto& [cell, idx] : members)
        if (densest == nullptr || idx.size() > densest->size()) densest = &idx;
    // The per-objective extremes anchor the grid; evict them only when nothing else is left.
    std::vector<bool> extreme(entries_.size(), false);
    for (std::size_t m = 0; m < entries_.front().objectives.size(); ++m) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (entries_[i].objectives[m] < entries_[best].objectives[m]) best = i;
        extreme[best] = true;
    }
    std::vector<std::size_t> candidates;
    for (std::size_t i : *densest)
        if (!extreme[i]) candidates.push_back(i);
    if (candidates.empty()) candidates = *densest;
    const std::size_t victim = candidates[rng.index(candidates.size())];
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
}

}  // namespace sspvb

namespace sspvb {

std::size_t knee_index(std::span<const ObjectivePoint> points) {
    if (points.empty()) return static_cast<std::size_t>(-1);
    const std::size_t dims = points.front().size();
    std::vector<double> lo(dims, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dims, -std::numeric_limits<double>::infinity());
    for (const auto& p : points)
        for (std::size_t m = 0; m < dims; ++m)
            if (std::isfinite(p[m])) {
                lo[m] = std::min(lo[m], p[m]);
                hi[m] = std::max(hi[m], p[m]);
            }
    std::size_t best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        double sq = 0.0;
        for (std::size_t m = 0; m < dims; ++m) {
            const double v = points[i][m];
            if (!std::isfinite(v)) {
                sq = std::numeric_limits<double>::infinity();
                break;
            }
            const double range = hi[m] - lo[m];
            const double z = range > 0.0 ? (v - lo[m]) / range : 0.0;
            sq += z * z;
        }
        if (sq < best_distance) {
            best_distance = sq;
            best = i;
        }
    }
    return best;
}

}  // namespace sspvb
