#pragma once

#include <cstdint>
#include <vector>

#include "psched/model.hpp"
#include "psched/pareto.hpp"
#include "psched/run_record.hpp"

namespace psched {

// NSGA-II on the integer-assignment encoding: binary tournament on
// (rank, crowding), uniform crossover, per-gene random-reset mutation,
// environmental selection by fast nondominated sort.
struct NsgaParams {
    double crossover_rate = 0.7;
    double mutation_rate = 0.3; // per child: rate / n_tasks per gene
    int n_sol = 50;
    int n_gen = 1000;
    int n_non = 50;
    ConstraintMode constraint_mode = ConstraintMode::feasibility_first;
    std::uint64_t seed = 0;
};

// MOPSO with real-valued velocities over the assignment coordinates and an
// external repository maintained by crowding truncation. No local search,
// no velocity clamp; velocities start at zero.
struct MopsoParams {
    double inertia = 0.871111;
    double c1 = 1.496180;
    double c2 = 1.496180;
    int n_sol = 50;
    int n_gen = 1000;
    int n_non = 50;
    ConstraintMode constraint_mode = ConstraintMode::feasibility_first;
    std::uint64_t seed = 0;
};

// Traditional SSO stepwise update with time-varying thresholds; the gBest
// role is filled by a uniform draw from the external repository.
struct MossoParams {
    int n_sol = 50;
    int n_gen = 1000;
    int n_non = 50;
    ConstraintMode constraint_mode = ConstraintMode::feasibility_first;
    std::uint64_t seed = 0;
};

// Cumulative thresholds of the MOSSO stepwise function at generation t:
//   C_g = 0.1 + 0.3 t / n_gen, C_p = 0.3 + 0.4 t / n_gen, C_w = 0.4 + 0.5 t / n_gen.
struct MossoThresholds {
    double c_g = 0.0;
    double c_p = 0.0;
    double c_w = 0.0;
};

inline MossoThresholds mosso_thresholds(int t, int n_gen) {
    const double frac = static_cast<double>(t) / static_cast<double>(n_gen);
    return MossoThresholds{0.1 + 0.3 * frac, 0.3 + 0.4 * frac, 0.4 + 0.5 * frac};
}

enum class SsoBranch { exemplar, pbest, keep, fresh };

inline SsoBranch pick_sso_branch(double rho, const MossoThresholds& th) {
    if (rho < th.c_g) return SsoBranch::exemplar;
    if (rho < th.c_p) return SsoBranch::pbest;
    if (rho < th.c_w) return SsoBranch::keep;
    return SsoBranch::fresh;
}

// Deb's fast nondominated sort: rank per point, 0 = first front.
std::vector<int> fast_nondominated_ranks(const std::vector<ObjectivePoint>& points,
                                         ConstraintMode mode);

// Deb's crowding over one front: boundary points +infinity, interior points
// the per-objective neighbour-gap sum normalized by the objective range.
// Distinct on purpose from the archive's nearest-neighbour crowding.
std::vector<double> nsga_crowding(const std::vector<ObjectivePoint>& front);

RunRecord run_nsga2(const ProblemInstance& instance, const NsgaParams& params);
RunRecord run_mopso(const ProblemInstance& instance, const MopsoParams& params);
RunRecord run_mosso(const ProblemInstance& instance, const MossoParams& params);

} // namespace psched
