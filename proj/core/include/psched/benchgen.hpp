#pragma once

#include <cstdint>

#include "psched/model.hpp"

namespace psched {

// Recipe for one synthetic benchmark instance. The stock sizes are
// (tasks, cpus) = (20, 5), (50, 10) and (100, 20), all with deadline 30,
// but any size with at least two processors is accepted.
struct BenchmarkSpec {
    int n_tasks = 20;
    int n_cpus = 5;
    double deadline = 30.0;
    std::uint64_t seed = 0;
};

// Energy rate (KW per unit time) of a processor: quadratic in speed, pinned
// to 0.3 at 1000 MIPS and 30 at 10000 MIPS.
inline double energy_for_speed(double speed) {
    return 0.3 * (speed / 1000.0) * (speed / 1000.0);
}

// Deterministic generation (same BenchmarkSpec -> identical instance):
//   - cpu speeds uniform in [1000, 10000], with one processor forced to
//     10000 and one to 1000 so the largest speed is exactly ten times the
//     smallest for every seed;
//   - cpu energies from energy_for_speed, i.e. within [0.3, 30];
//   - task sizes uniform in [5000, 15000].
// Throws std::invalid_argument for n_tasks < 1, n_cpus < 2 or a
// non-positive deadline.
ProblemInstance generate(const BenchmarkSpec& spec);

} // namespace psched
