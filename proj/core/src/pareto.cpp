#include "psched/pareto.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace psched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool entry_less(const ArchiveEntry& a, const ArchiveEntry& b) {
    return canonical_point_less(a.point, b.point);
}

// Staircase scan over canonically sorted entries: a point survives iff its
// makespan is strictly below every point with smaller (or equal) energy seen
// before it. Drops dominated points and exact duplicates in one pass.
std::vector<ArchiveEntry> sweep_sorted(std::vector<ArchiveEntry> sorted, ConstraintMode mode) {
    std::vector<ArchiveEntry> out;
    if (mode == ConstraintMode::feasibility_first) {
        const bool any_feasible =
            std::any_of(sorted.begin(), sorted.end(),
                        [](const ArchiveEntry& e) { return e.point.feasible; });
        if (!any_feasible) {
            // Dominance among infeasible points is by makespan alone, so the
            // survivors are exactly the violation-minimal points.
            double best = kInf;
            for (const ArchiveEntry& e : sorted) best = std::min(best, e.point.makespan);
            for (ArchiveEntry& e : sorted) {
                if (e.point.makespan != best) continue;
                if (!out.empty() && same_point(out.back().point, e.point)) continue;
                out.push_back(std::move(e));
            }
            return out;
        }
        std::erase_if(sorted, [](const ArchiveEntry& e) { return !e.point.feasible; });
    }
    double best_makespan = kInf;
    for (ArchiveEntry& e : sorted) {
        if (e.point.makespan < best_makespan) {
            best_makespan = e.point.makespan;
            out.push_back(std::move(e));
        }
    }
    return out;
}

} // namespace

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b, ConstraintMode mode) {
    if (mode == ConstraintMode::feasibility_first) {
        if (a.feasible != b.feasible) return a.feasible;
        if (!a.feasible) return a.makespan < b.makespan;
    }
    return a.energy <= b.energy && a.makespan <= b.makespan &&
           (a.energy < b.energy || a.makespan < b.makespan);
}

void sort_canonical(std::vector<ArchiveEntry>& entries) {
    std::stable_sort(entries.begin(), entries.end(), entry_less);
}

std::vector<ArchiveEntry> nondominated_filter(const std::vector<ArchiveEntry>& entries,
                                              ConstraintMode mode) {
    std::vector<ArchiveEntry> out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < entries.size() && !drop; ++j) {
            if (j == i) continue;
            if (dominates(entries[j].point, entries[i].point, mode)) drop = true;
            if (j < i && same_point(entries[j].point, entries[i].point)) drop = true;
        }
        if (!drop) out.push_back(entries[i]);
    }
    return out;
}

std::vector<ObjectivePoint> nondominated_points(std::vector<ObjectivePoint> points) {
    std::stable_sort(points.begin(), points.end(), canonical_point_less);
    std::vector<ObjectivePoint> out;
    double best_makespan = kInf;
    for (const ObjectivePoint& p : points) {
        if (p.makespan < best_makespan) {
            best_makespan = p.makespan;
            out.push_back(p);
        }
    }
    return out;
}

std::vector<ArchiveEntry> group_compare(const Archive& previous,
                                        const std::vector<ArchiveEntry>& offspring,
                                        ConstraintMode mode) {
    if (!archive_well_formed(previous, mode)) {
        assert(!"group_compare: previous front is not a well-formed archive");
        std::vector<ArchiveEntry> all = previous.entries;
        all.insert(all.end(), offspring.begin(), offspring.end());
        auto result = nondominated_filter(all, mode);
        sort_canonical(result);
        return result;
    }

    auto fresh = nondominated_filter(offspring, mode);
    sort_canonical(fresh);

    // Both sequences are sorted; on equal points std::merge emits the
    // archive entry first, so the established solution wins duplicate ties.
    std::vector<ArchiveEntry> merged;
    merged.reserve(previous.entries.size() + fresh.size());
    std::merge(previous.entries.begin(), previous.entries.end(), fresh.begin(), fresh.end(),
               std::back_inserter(merged), entry_less);
    return sweep_sorted(std::move(merged), mode);
}

std::vector<double> crowding_distance(std::span<const ArchiveEntry> front) {
    if (front.empty()) throw std::invalid_argument("crowding_distance: empty front");
    const std::size_t n = front.size();
    if (n == 1) return {kInf};

    auto axis_gaps = [n, &front](auto value) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return value(front[a]) < value(front[b]);
        });
        std::vector<double> gaps(n, 0.0);
        const double range = value(front[idx[n - 1]]) - value(front[idx[0]]);
        if (range <= 0.0) return gaps; // collapsed axis contributes nothing
        for (std::size_t k = 0; k < n; ++k) {
            const double v = value(front[idx[k]]);
            double nearest = kInf;
            if (k > 0) nearest = std::min(nearest, v - value(front[idx[k - 1]]));
            if (k + 1 < n) nearest = std::min(nearest, value(front[idx[k + 1]]) - v);
            gaps[idx[k]] = nearest / range;
        }
        return gaps;
    };

    const auto d_energy = axis_gaps([](const ArchiveEntry& e) { return e.point.energy; });
    const auto d_makespan = axis_gaps([](const ArchiveEntry& e) { return e.point.makespan; });

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::sqrt(d_energy[i] * d_energy[i] + d_makespan[i] * d_makespan[i]);
    return out;
}

std::vector<ArchiveEntry> truncate_by_crowding(const std::vector<ArchiveEntry>& front,
                                               std::size_t keep) {
    if (front.size() <= keep) return front;

    const auto values = crowding_distance(front);
    std::vector<std::size_t> idx(front.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] > values[b];
        const ObjectivePoint& pa = front[a].point;
        const ObjectivePoint& pb = front[b].point;
        if (pa.energy != pb.energy) return pa.energy < pb.energy;
        if (pa.makespan != pb.makespan) return pa.makespan < pb.makespan;
        return a < b;
    });

    std::vector<ArchiveEntry> out;
    out.reserve(keep);
    for (std::size_t k = 0; k < keep; ++k) out.push_back(front[idx[k]]);
    return out;
}

Archive make_archive(std::vector<ArchiveEntry> entries, std::size_t capacity,
                     ConstraintMode mode) {
    if (capacity == 0) throw std::invalid_argument("archive capacity must be positive");
    auto kept = truncate_by_crowding(nondominated_filter(entries, mode), capacity);
    sort_canonical(kept);
    Archive archive{std::move(kept), capacity};
    assert(archive_well_formed(archive, mode));
    return archive;
}

bool archive_well_formed(const Archive& archive, ConstraintMode mode) {
    if (archive.capacity == 0) return false;
    if (archive.entries.size() > archive.capacity) return false;
    const auto& e = archive.entries;
    if (e.empty()) return true;

    if (mode == ConstraintMode::feasibility_first) {
        const bool first_feasible = e.front().point.feasible;
        for (const ArchiveEntry& entry : e)
            if (entry.point.feasible != first_feasible) return false; // mixed front
        if (!first_feasible) {
            // All infeasible: equal (minimal) violation, energies distinct.
            for (std::size_t i = 0; i + 1 < e.size(); ++i) {
                if (e[i].point.makespan != e[i + 1].point.makespan) return false;
                if (!(e[i].point.energy < e[i + 1].point.energy)) return false;
            }
            return true;
        }
    }
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        if (!(e[i].point.energy < e[i + 1].point.energy)) return false;
        if (!(e[i].point.makespan > e[i + 1].point.makespan)) return false;
    }
    return true;
}

} // namespace psched
