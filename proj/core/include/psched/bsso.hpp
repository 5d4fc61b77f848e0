#pragma once

#include <cstdint>
#include <vector>

#include "psched/model.hpp"
#include "psched/pareto.hpp"
#include "psched/rng.hpp"
#include "psched/run_record.hpp"

namespace psched {

// Bi-objective simplified swarm optimization. The stepwise update keeps no
// gBest or per-solution history: each offspring copies coordinates from a
// randomly chosen archive member, keeps its own, or redraws fresh.
struct BssoParams {
    double c_p = 0.5; // probability mass: copy the exemplar's coordinate
    double c_w = 0.3; // probability mass: keep the current coordinate
    int n_sol = 50;
    int n_gen = 1000;
    int n_non = 50; // archive capacity; the stock experiments use n_non = n_sol
    ConstraintMode constraint_mode = ConstraintMode::feasibility_first;
    std::uint64_t seed = 0;
};

// Throws std::invalid_argument when c_p/c_w leave [0,1], c_p + c_w > 1, or a
// count is not positive. The leftover mass c_r = 1 - c_p - c_w feeds the
// fresh-random branch.
void validate_params(const BssoParams& params);

enum class UpdateBranch { exemplar, keep, fresh };

// Branch of the stepwise update for one draw. Thresholds are cumulative:
// copy below `threshold_copy`, keep below `threshold_keep`, redraw above.
inline UpdateBranch pick_update_branch(double rho, double threshold_copy,
                                       double threshold_keep) {
    if (rho < threshold_copy) return UpdateBranch::exemplar;
    if (rho < threshold_keep) return UpdateBranch::keep;
    return UpdateBranch::fresh;
}

// Coordinate-wise stepwise update of `current` against one exemplar. Each
// coordinate draws one rho; the fresh branch draws one extra processor
// index immediately after.
template <RandomSource R>
Schedule update_solution(const Schedule& current, const Schedule& exemplar,
                         const BssoParams& params, int n_cpus, R& rng) {
    const double threshold_copy = params.c_p;
    const double threshold_keep = params.c_p + params.c_w;
    Schedule offspring;
    offspring.procs.reserve(current.procs.size());
    for (std::size_t j = 0; j < current.procs.size(); ++j) {
        switch (pick_update_branch(rng.uniform01(), threshold_copy, threshold_keep)) {
        case UpdateBranch::exemplar:
            offspring.procs.push_back(exemplar.procs[j]);
            break;
        case UpdateBranch::keep:
            offspring.procs.push_back(current.procs[j]);
            break;
        case UpdateBranch::fresh:
            offspring.procs.push_back(rng.uniform_index(n_cpus));
            break;
        }
    }
    return offspring;
}

// Uniform draw over the archive entries; one fresh draw per offspring.
// Throws std::logic_error on an empty archive.
const Schedule& select_exemplar(const Archive& archive, Rng& rng);

// Picks the next generation's n_sol parents: the whole front, truncated by
// crowding when oversized, padded with uniform draws (without replacement)
// from the rest of the pool when undersized. Throws std::invalid_argument
// when the pool cannot supply n_sol parents.
std::vector<ArchiveEntry> hybrid_elite_select(const std::vector<ArchiveEntry>& front,
                                              const std::vector<ArchiveEntry>& pool,
                                              int n_sol, Rng& rng);

// Full generation loop. Exactly n_sol * n_gen fitness evaluations: the
// initial population counts, and n_gen - 1 update rounds follow.
RunRecord run_bsso(const ProblemInstance& instance, const BssoParams& params);

} // namespace psched
