#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psched/rng.hpp"

namespace psched {

// A scheduling environment: independent tasks, heterogeneous processors and
// one global deadline. Immutable after construction; all operations on it
// are pure functions.
struct ProblemInstance {
    std::string name;
    std::vector<double> task_sizes;   // MI
    std::vector<double> cpu_speeds;   // MIPS
    std::vector<double> cpu_energies; // KW per unit time
    double deadline = 0.0;

    int n_tasks() const { return static_cast<int>(task_sizes.size()); }
    int n_cpus() const { return static_cast<int>(cpu_speeds.size()); }
};

// Throws std::invalid_argument when a field violates the model invariants
// (empty lists, non-positive sizes/speeds/energies/deadline, length mismatch).
void validate_instance(const ProblemInstance& inst);

// One processor index per task. Stored 0-based; serialized forms and the
// usual notation are 1-based, hence the conversion helpers.
struct Schedule {
    std::vector<int> procs;

    static Schedule from_one_based(const std::vector<int>& assignment);
    std::vector<int> to_one_based() const;

    bool operator==(const Schedule&) const = default;
};

// Objective values of one schedule. `feasible` records whether the makespan
// meets the instance deadline; whether infeasible points take part in the
// search is decided by the archive's constraint mode, not here.
struct ObjectivePoint {
    double energy = 0.0;   // KW * time
    double makespan = 0.0; // time
    bool feasible = false;
};

// Equality in objective space. The feasible flag is derived from the
// makespan, so (energy, makespan) identifies the point.
inline bool same_point(const ObjectivePoint& a, const ObjectivePoint& b) {
    return a.energy == b.energy && a.makespan == b.makespan;
}

// size/speed of one (task, cpu) pair; indices 0-based.
// Throws std::out_of_range on a bad index.
double processing_time(const ProblemInstance& inst, int task, int cpu);

// Total energy, makespan and deadline feasibility of a complete assignment.
// Throws std::invalid_argument on a length mismatch, std::out_of_range on a
// bad processor index.
ObjectivePoint evaluate(const ProblemInstance& inst, const Schedule& sched);

// Every coordinate drawn independently and uniformly over the processors.
Schedule random_schedule(const ProblemInstance& inst, Rng& rng);

// evaluate() wrapper that counts calls and enforces a fixed budget. Every
// search algorithm routes its fitness evaluations through one of these, so
// exceeding the per-run budget is a hard error (std::logic_error), not a
// statistic that drifts.
class CountingEvaluator {
public:
    CountingEvaluator(const ProblemInstance& inst, std::uint64_t budget)
        : inst_(&inst), budget_(budget) {}

    ObjectivePoint operator()(const Schedule& sched);

    std::uint64_t count() const { return count_; }
    std::uint64_t budget() const { return budget_; }
    const ProblemInstance& instance() const { return *inst_; }

private:
    const ProblemInstance* inst_;
    std::uint64_t budget_;
    std::uint64_t count_ = 0;
};

} // namespace psched
