#pragma once

#include <span>
#include <vector>

#include "psched/pareto.hpp"

namespace psched {

// Stand-in for the unknown true Pareto front: nondominated, unique points
// sorted by energy ascending. Built by pooling final archives, or loaded
// from a frozen CSV.
struct ReferenceFront {
    std::vector<ObjectivePoint> points;
};

// Pools every archive's objective points and keeps the nondominated set
// (raw objective comparison; the front is an objective-space object).
// Idempotent. Throws std::invalid_argument when all archives are empty.
ReferenceFront build_simulated_front(const std::vector<Archive>& archives);

// Shortest Euclidean distance from one point to the front.
double distance_to_front(const ObjectivePoint& point, const ReferenceFront& front);

// Generational distance: sqrt(sum of squared distances) / N over the N
// archive points. Zero iff the archive lies on the front.
// Throws std::invalid_argument on an empty archive or empty front.
double gd(std::span<const ObjectivePoint> archive_points, const ReferenceFront& front);

// Spacing: sqrt(sum (mean_d - d_i)^2) / (N - 1), with the same
// distance-to-front d_i as gd. Fewer than two points is degenerate: value 0
// and the flag set.
struct SpResult {
    double value = 0.0;
    bool degenerate = false;
};
SpResult sp(std::span<const ObjectivePoint> archive_points, const ReferenceFront& front);

// N_n = archive size; N_p = how many archive points sit on the front, up to
// a tolerance relative to the front's objective ranges.
struct CountStats {
    int n_n = 0;
    int n_p = 0;
};
CountStats count_stats(const Archive& archive, const ReferenceFront& front,
                       double tol_rel = 1e-9);

} // namespace psched
