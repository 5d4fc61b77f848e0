#include "psched/benchgen.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace psched {

ProblemInstance generate(const BenchmarkSpec& spec) {
    if (spec.n_tasks < 1) throw std::invalid_argument("benchmark needs at least one task");
    if (spec.n_cpus < 2)
        throw std::invalid_argument("the 10x speed-ratio rule needs at least two processors");
    if (!(spec.deadline > 0.0)) throw std::invalid_argument("deadline must be positive");

    Rng rng(spec.seed);

    std::vector<double> speeds(static_cast<std::size_t>(spec.n_cpus));
    for (double& s : speeds) s = rng.uniform_real(1000.0, 10000.0);

    // Pin the extremes at random positions: the fastest draw becomes 10000,
    // the slowest 1000, so max/min is exactly 10 while every speed stays in
    // [1000, 10000].
    auto i_max = static_cast<std::size_t>(
        std::max_element(speeds.begin(), speeds.end()) - speeds.begin());
    auto i_min = static_cast<std::size_t>(
        std::min_element(speeds.begin(), speeds.end()) - speeds.begin());
    if (i_min == i_max) i_min = (i_max + 1) % speeds.size();
    speeds[i_max] = 10000.0;
    speeds[i_min] = 1000.0;

    ProblemInstance inst;
    inst.cpu_speeds = speeds;
    inst.cpu_energies.reserve(speeds.size());
    for (double s : speeds) inst.cpu_energies.push_back(energy_for_speed(s));

    inst.task_sizes.resize(static_cast<std::size_t>(spec.n_tasks));
    for (double& t : inst.task_sizes) t = rng.uniform_real(5000.0, 15000.0);

    inst.deadline = spec.deadline;
    inst.name = "bench_t" + std::to_string(spec.n_tasks) + "_c" + std::to_string(spec.n_cpus) +
                "_s" + std::to_string(spec.seed);
    validate_instance(inst);
    return inst;
}

} // namespace psched
