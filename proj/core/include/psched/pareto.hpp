#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "psched/model.hpp"

namespace psched {

// What to do with schedules that miss the deadline. `ignore` compares raw
// objective values only; `feasibility_first` lets any feasible point beat
// any infeasible one and orders infeasible points by their violation.
// Fixed per run.
enum class ConstraintMode { ignore, feasibility_first };

struct ArchiveEntry {
    Schedule schedule;
    ObjectivePoint point;
};

// Bounded set of temporary nondominated solutions. Well-formed archives are
// mutually nondominated, unique by objective point, sorted by
// (energy, makespan) ascending, and hold at most `capacity` entries.
struct Archive {
    std::vector<ArchiveEntry> entries;
    std::size_t capacity = 0;
};

// Strict Pareto dominance, both objectives minimized.
bool dominates(const ObjectivePoint& a, const ObjectivePoint& b, ConstraintMode mode);

// (energy, makespan) lexicographic order; the canonical archive order.
inline bool canonical_point_less(const ObjectivePoint& a, const ObjectivePoint& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.makespan < b.makespan;
}

void sort_canonical(std::vector<ArchiveEntry>& entries);

// Pairwise O(N^2) scan: exactly the entries not dominated by any other
// input entry, in input order. Entries with identical objective points
// collapse to the first occurrence.
std::vector<ArchiveEntry> nondominated_filter(const std::vector<ArchiveEntry>& entries,
                                              ConstraintMode mode);

// Nondominated subset of bare objective points, deduplicated and sorted by
// energy ascending. O(N log N).
std::vector<ObjectivePoint> nondominated_points(std::vector<ObjectivePoint> points);

// Nondominated set of `previous ∪ offspring`, computed as: pairwise filter
// over the offspring, then an O(N log N) sorted merge against the already
// nondominated `previous`. Set-equal (by objective points) to
// nondominated_filter on the concatenation.
//
// `previous` must be well-formed; a malformed archive trips an assert in
// debug builds and falls back to the full pairwise filter in release.
// The result is canonically sorted and not yet capacity-capped.
std::vector<ArchiveEntry> group_compare(const Archive& previous,
                                        const std::vector<ArchiveEntry>& offspring,
                                        ConstraintMode mode);

// Per-entry diversity score over one mutually nondominated front: for each
// objective, the distance to the nearest other entry normalized by the
// front's range on that objective (0 when the range collapses), combined as
// sqrt(d1^2 + d2^2). A singleton front scores +infinity.
// Throws std::invalid_argument on an empty front.
std::vector<double> crowding_distance(std::span<const ArchiveEntry> front);

// Keeps the `keep` entries with the largest crowding values, ties broken by
// lower energy, then lower makespan, then input position. Returns the
// selection in ranking order; a front already within `keep` is returned
// unchanged.
std::vector<ArchiveEntry> truncate_by_crowding(const std::vector<ArchiveEntry>& front,
                                               std::size_t keep);

// Filter + crowding truncation + canonical sort: the one way archives are
// (re)built.
Archive make_archive(std::vector<ArchiveEntry> entries, std::size_t capacity,
                     ConstraintMode mode);

// Invariant check used by asserts and tests: canonical order, unique points,
// mutual nondominance under `mode`, size within capacity.
bool archive_well_formed(const Archive& archive, ConstraintMode mode);

} // namespace psched
