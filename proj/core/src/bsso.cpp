#include "psched/bsso.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

#include "run_common.hpp"

namespace psched {

void validate_params(const BssoParams& params) {
    if (params.c_p < 0.0 || params.c_p > 1.0)
        throw std::invalid_argument("c_p must be in [0, 1]");
    if (params.c_w < 0.0 || params.c_w > 1.0)
        throw std::invalid_argument("c_w must be in [0, 1]");
    if (params.c_p + params.c_w > 1.0)
        throw std::invalid_argument("c_p + c_w must not exceed 1");
    if (params.n_sol < 1) throw std::invalid_argument("n_sol must be positive");
    if (params.n_gen < 1) throw std::invalid_argument("n_gen must be positive");
    if (params.n_non < 1) throw std::invalid_argument("n_non must be positive");
}

const Schedule& select_exemplar(const Archive& archive, Rng& rng) {
    if (archive.entries.empty()) throw std::logic_error("select_exemplar: archive is empty");
    const int pick = rng.uniform_index(static_cast<int>(archive.entries.size()));
    return archive.entries[static_cast<std::size_t>(pick)].schedule;
}

std::vector<ArchiveEntry> hybrid_elite_select(const std::vector<ArchiveEntry>& front,
                                              const std::vector<ArchiveEntry>& pool,
                                              int n_sol, Rng& rng) {
    if (n_sol < 1) throw std::invalid_argument("hybrid_elite_select: n_sol must be positive");
    const auto want = static_cast<std::size_t>(n_sol);
    if (pool.size() < want)
        throw std::invalid_argument("hybrid_elite_select: pool smaller than n_sol");

    if (front.size() >= want) return truncate_by_crowding(front, want);

    std::vector<ArchiveEntry> parents = front;

    // Pool minus the front: remove one pool instance per front point, so
    // duplicates of a nondominated point stay eligible as fill.
    std::vector<char> taken(pool.size(), 0);
    for (const ArchiveEntry& f : front) {
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (!taken[i] && same_point(pool[i].point, f.point)) {
                taken[i] = 1;
                break;
            }
        }
    }
    std::vector<std::size_t> candidates;
    candidates.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (!taken[i]) candidates.push_back(i);

    // Partial Fisher-Yates: uniform draws without replacement.
    const std::size_t need = want - front.size();
    for (std::size_t k = 0; k < need; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng.uniform_index(
                                      static_cast<int>(candidates.size() - k)));
        std::swap(candidates[k], candidates[j]);
        parents.push_back(pool[candidates[k]]);
    }
    return parents;
}

RunRecord run_bsso(const ProblemInstance& instance, const BssoParams& params) {
    validate_params(params);
    validate_instance(instance);
    const auto started = detail::RunClock::now();

    Rng rng(params.seed);
    CountingEvaluator evaluate_counted(
        instance,
        static_cast<std::uint64_t>(params.n_sol) * static_cast<std::uint64_t>(params.n_gen));

    std::vector<ArchiveEntry> parents;
    parents.reserve(static_cast<std::size_t>(params.n_sol));
    for (int k = 0; k < params.n_sol; ++k) {
        Schedule s = random_schedule(instance, rng);
        const ObjectivePoint pt = evaluate_counted(s);
        parents.push_back(ArchiveEntry{std::move(s), pt});
    }
    Archive archive =
        make_archive(parents, static_cast<std::size_t>(params.n_non), params.constraint_mode);

    for (int t = 2; t <= params.n_gen; ++t) {
        std::vector<ArchiveEntry> offspring;
        offspring.reserve(static_cast<std::size_t>(params.n_sol));
        for (int k = 0; k < params.n_sol; ++k) {
            const Schedule& exemplar = select_exemplar(archive, rng);
            Schedule s = update_solution(parents[static_cast<std::size_t>(k)].schedule, exemplar,
                                         params, instance.n_cpus(), rng);
            const ObjectivePoint pt = evaluate_counted(s);
            offspring.push_back(ArchiveEntry{std::move(s), pt});
        }

        auto front = group_compare(archive, offspring, params.constraint_mode);

        std::vector<ArchiveEntry> pool = std::move(parents);
        pool.insert(pool.end(), offspring.begin(), offspring.end());
        parents = hybrid_elite_select(front, pool, params.n_sol, rng);

        archive.entries = truncate_by_crowding(front, static_cast<std::size_t>(params.n_non));
        sort_canonical(archive.entries);
        assert(archive_well_formed(archive, params.constraint_mode));
    }

    return detail::make_run_record(instance, params.n_sol, params.seed, std::move(archive),
                                   evaluate_counted.count(), started);
}

} // namespace psched
