#pragma once

#include <chrono>
#include <utility>

#include "psched/model.hpp"
#include "psched/run_record.hpp"

namespace psched::detail {

using RunClock = std::chrono::steady_clock;

// Shared tail of every run function: archive statistics and wall time.
// The algorithm id and run index stay unset; the experiment runner owns them.
inline RunRecord make_run_record(const ProblemInstance& instance, int n_sol,
                                 std::uint64_t seed, Archive archive,
                                 std::uint64_t evaluations, RunClock::time_point started) {
    RunRecord rec;
    rec.instance_name = instance.name;
    rec.n_sol = n_sol;
    rec.seed = seed;
    rec.archive = std::move(archive);
    rec.evaluation_count = evaluations;
    double energy = 0.0;
    double makespan = 0.0;
    for (const ArchiveEntry& e : rec.archive.entries) {
        energy += e.point.energy;
        makespan += e.point.makespan;
    }
    if (!rec.archive.entries.empty()) {
        const double n = static_cast<double>(rec.archive.entries.size());
        rec.mean_energy = energy / n;
        rec.mean_makespan = makespan / n;
    }
    rec.wall_seconds = std::chrono::duration<double>(RunClock::now() - started).count();
    return rec;
}

} // namespace psched::detail
