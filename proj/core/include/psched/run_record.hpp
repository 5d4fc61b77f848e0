#pragma once

#include <cstdint>
#include <string>

#include "psched/pareto.hpp"

namespace psched {

// Everything one optimization run leaves behind. The algorithm id and run
// index are assigned by the experiment runner; a run function fills the
// rest. Wall-clock time is the only field exempt from the reproducibility
// contract.
struct RunRecord {
    int alg_id = -1;
    std::string instance_name;
    int n_sol = 0;
    int run_index = 0;
    std::uint64_t seed = 0;
    Archive archive;
    std::uint64_t evaluation_count = 0;
    double wall_seconds = 0.0;
    double mean_energy = 0.0;   // over the final archive
    double mean_makespan = 0.0; // over the final archive
};

} // namespace psched
