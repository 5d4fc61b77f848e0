#include "psched/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace psched {

void validate_instance(const ProblemInstance& inst) {
    if (inst.task_sizes.empty())
        throw std::invalid_argument("instance '" + inst.name + "': no tasks");
    if (inst.cpu_speeds.empty())
        throw std::invalid_argument("instance '" + inst.name + "': no processors");
    if (inst.cpu_energies.size() != inst.cpu_speeds.size())
        throw std::invalid_argument("instance '" + inst.name +
                                    "': speeds and energies differ in length");
    for (double s : inst.task_sizes)
        if (!(s > 0.0)) throw std::invalid_argument("task size must be positive");
    for (double s : inst.cpu_speeds)
        if (!(s > 0.0)) throw std::invalid_argument("cpu speed must be positive");
    for (double e : inst.cpu_energies)
        if (!(e > 0.0)) throw std::invalid_argument("cpu energy must be positive");
    if (!(inst.deadline > 0.0)) throw std::invalid_argument("deadline must be positive");
}

Schedule Schedule::from_one_based(const std::vector<int>& assignment) {
    Schedule s;
    s.procs.reserve(assignment.size());
    for (int p : assignment) s.procs.push_back(p - 1);
    return s;
}

std::vector<int> Schedule::to_one_based() const {
    std::vector<int> out;
    out.reserve(procs.size());
    for (int p : procs) out.push_back(p + 1);
    return out;
}

double processing_time(const ProblemInstance& inst, int task, int cpu) {
    if (task < 0 || task >= inst.n_tasks()) throw std::out_of_range("task index out of range");
    if (cpu < 0 || cpu >= inst.n_cpus()) throw std::out_of_range("cpu index out of range");
    return inst.task_sizes[static_cast<std::size_t>(task)] /
           inst.cpu_speeds[static_cast<std::size_t>(cpu)];
}

ObjectivePoint evaluate(const ProblemInstance& inst, const Schedule& sched) {
    if (sched.procs.size() != inst.task_sizes.size())
        throw std::invalid_argument("schedule length does not match the instance");

    std::vector<double> load(inst.cpu_speeds.size(), 0.0);
    double energy = 0.0;
    for (std::size_t i = 0; i < sched.procs.size(); ++i) {
        const int cpu = sched.procs[i];
        if (cpu < 0 || cpu >= inst.n_cpus())
            throw std::out_of_range("schedule assigns a task to a nonexistent processor");
        const double t = inst.task_sizes[i] / inst.cpu_speeds[static_cast<std::size_t>(cpu)];
        energy += t * inst.cpu_energies[static_cast<std::size_t>(cpu)];
        load[static_cast<std::size_t>(cpu)] += t;
    }
    const double makespan = *std::max_element(load.begin(), load.end());
    return ObjectivePoint{energy, makespan, makespan <= inst.deadline};
}

Schedule random_schedule(const ProblemInstance& inst, Rng& rng) {
    Schedule s;
    s.procs.reserve(inst.task_sizes.size());
    for (int i = 0; i < inst.n_tasks(); ++i) s.procs.push_back(rng.uniform_index(inst.n_cpus()));
    return s;
}

ObjectivePoint CountingEvaluator::operator()(const Schedule& sched) {
    if (count_ >= budget_) throw std::logic_error("evaluation budget exceeded");
    ++count_;
    return evaluate(*inst_, sched);
}

} // namespace psched
