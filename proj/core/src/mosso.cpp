#include <cassert>
#include <stdexcept>
#include <utility>

#include "psched/baselines.hpp"
#include "psched/bsso.hpp"
#include "psched/rng.hpp"
#include "run_common.hpp"

namespace psched {

namespace {

void validate(const MossoParams& p) {
    if (p.n_sol < 1) throw std::invalid_argument("n_sol must be positive");
    if (p.n_gen < 1) throw std::invalid_argument("n_gen must be positive");
    if (p.n_non < 1) throw std::invalid_argument("n_non must be positive");
}

} // namespace

RunRecord run_mosso(const ProblemInstance& instance, const MossoParams& params) {
    validate(params);
    validate_instance(instance);
    const auto started = detail::RunClock::now();

    Rng rng(params.seed);
    CountingEvaluator evaluate_counted(
        instance,
        static_cast<std::uint64_t>(params.n_sol) * static_cast<std::uint64_t>(params.n_gen));

    const int n_cpus = instance.n_cpus();

    std::vector<ArchiveEntry> population;
    population.reserve(static_cast<std::size_t>(params.n_sol));
    for (int k = 0; k < params.n_sol; ++k) {
        Schedule s = random_schedule(instance, rng);
        const ObjectivePoint pt = evaluate_counted(s);
        population.push_back(ArchiveEntry{std::move(s), pt});
    }
    std::vector<ArchiveEntry> pbest = population;
    Archive repository = make_archive(population, static_cast<std::size_t>(params.n_non),
                                      params.constraint_mode);

    for (int t = 2; t <= params.n_gen; ++t) {
        const MossoThresholds th = mosso_thresholds(t, params.n_gen);
        for (std::size_t i = 0; i < population.size(); ++i) {
            const Schedule& exemplar = select_exemplar(repository, rng);
            const Schedule& current = population[i].schedule;
            Schedule next;
            next.procs.reserve(current.procs.size());
            for (std::size_t j = 0; j < current.procs.size(); ++j) {
                switch (pick_sso_branch(rng.uniform01(), th)) {
                case SsoBranch::exemplar:
                    next.procs.push_back(exemplar.procs[j]);
                    break;
                case SsoBranch::pbest:
                    next.procs.push_back(pbest[i].schedule.procs[j]);
                    break;
                case SsoBranch::keep:
                    next.procs.push_back(current.procs[j]);
                    break;
                case SsoBranch::fresh:
                    next.procs.push_back(rng.uniform_index(n_cpus));
                    break;
                }
            }
            const ObjectivePoint pt = evaluate_counted(next);
            population[i] = ArchiveEntry{std::move(next), pt};
            if (dominates(pt, pbest[i].point, params.constraint_mode))
                pbest[i] = population[i];
        }
        repository.entries = truncate_by_crowding(
            group_compare(repository, population, params.constraint_mode),
            static_cast<std::size_t>(params.n_non));
        sort_canonical(repository.entries);
        assert(archive_well_formed(repository, params.constraint_mode));
    }

    return detail::make_run_record(instance, params.n_sol, params.seed, std::move(repository),
                                   evaluate_counted.count(), started);
}

} // namespace psched
