#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "psched/baselines.hpp"
#include "psched/bsso.hpp"
#include "psched/rng.hpp"
#include "run_common.hpp"

namespace psched {

namespace {

struct Particle {
    std::vector<int> position; // 0-based processor indices
    std::vector<double> velocity;
    ArchiveEntry pbest;
};

void validate(const MopsoParams& p) {
    if (p.inertia < 0.0) throw std::invalid_argument("inertia must be nonnegative");
    if (p.c1 < 0.0 || p.c2 < 0.0)
        throw std::invalid_argument("acceleration coefficients must be nonnegative");
    if (p.n_sol < 1) throw std::invalid_argument("n_sol must be positive");
    if (p.n_gen < 1) throw std::invalid_argument("n_gen must be positive");
    if (p.n_non < 1) throw std::invalid_argument("n_non must be positive");
}

} // namespace

RunRecord run_mopso(const ProblemInstance& instance, const MopsoParams& params) {
    validate(params);
    validate_instance(instance);
    const auto started = detail::RunClock::now();

    Rng rng(params.seed);
    CountingEvaluator evaluate_counted(
        instance,
        static_cast<std::uint64_t>(params.n_sol) * static_cast<std::uint64_t>(params.n_gen));

    const int n_cpus = instance.n_cpus();
    const std::size_t n_var = static_cast<std::size_t>(instance.n_tasks());

    std::vector<Particle> swarm;
    swarm.reserve(static_cast<std::size_t>(params.n_sol));
    std::vector<ArchiveEntry> seen;
    seen.reserve(static_cast<std::size_t>(params.n_sol));
    for (int k = 0; k < params.n_sol; ++k) {
        Schedule s = random_schedule(instance, rng);
        const ObjectivePoint pt = evaluate_counted(s);
        Particle particle;
        particle.position = s.procs;
        particle.velocity.assign(n_var, 0.0);
        particle.pbest = ArchiveEntry{s, pt};
        swarm.push_back(std::move(particle));
        seen.push_back(ArchiveEntry{std::move(s), pt});
    }
    Archive repository =
        make_archive(std::move(seen), static_cast<std::size_t>(params.n_non),
                     params.constraint_mode);

    for (int t = 2; t <= params.n_gen; ++t) {
        std::vector<ArchiveEntry> moved;
        moved.reserve(swarm.size());
        for (Particle& particle : swarm) {
            const Schedule& leader = select_exemplar(repository, rng);
            for (std::size_t j = 0; j < n_var; ++j) {
                const double r1 = rng.uniform01();
                const double r2 = rng.uniform01();
                const double x = static_cast<double>(particle.position[j]);
                particle.velocity[j] =
                    params.inertia * particle.velocity[j] +
                    params.c1 * r1 * (static_cast<double>(particle.pbest.schedule.procs[j]) - x) +
                    params.c2 * r2 * (static_cast<double>(leader.procs[j]) - x);
                const long long rounded = std::llround(x + particle.velocity[j]);
                particle.position[j] = static_cast<int>(
                    std::clamp<long long>(rounded, 0, static_cast<long long>(n_cpus - 1)));
            }
            Schedule s;
            s.procs = particle.position;
            const ObjectivePoint pt = evaluate_counted(s);

            // pbest: replace when dominated by the move; on mutual
            // nondominance keep or replace with equal probability.
            if (dominates(pt, particle.pbest.point, params.constraint_mode)) {
                particle.pbest = ArchiveEntry{s, pt};
            } else if (!dominates(particle.pbest.point, pt, params.constraint_mode) &&
                       rng.uniform01() < 0.5) {
                particle.pbest = ArchiveEntry{s, pt};
            }
            moved.push_back(ArchiveEntry{std::move(s), pt});
        }
        repository.entries = truncate_by_crowding(
            group_compare(repository, moved, params.constraint_mode),
            static_cast<std::size_t>(params.n_non));
        sort_canonical(repository.entries);
        assert(archive_well_formed(repository, params.constraint_mode));
    }

    return detail::make_run_record(instance, params.n_sol, params.seed, std::move(repository),
                                   evaluate_counted.count(), started);
}

} // namespace psched
