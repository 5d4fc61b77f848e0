#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "psched/baselines.hpp"
#include "psched/rng.hpp"
#include "run_common.hpp"

namespace psched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Individual {
    Schedule schedule;
    ObjectivePoint point;
};

void validate(const NsgaParams& p) {
    if (p.crossover_rate < 0.0 || p.crossover_rate > 1.0)
        throw std::invalid_argument("crossover_rate must be in [0, 1]");
    if (p.mutation_rate < 0.0 || p.mutation_rate > 1.0)
        throw std::invalid_argument("mutation_rate must be in [0, 1]");
    if (p.n_sol < 1) throw std::invalid_argument("n_sol must be positive");
    if (p.n_gen < 1) throw std::invalid_argument("n_gen must be positive");
    if (p.n_non < 1) throw std::invalid_argument("n_non must be positive");
}

std::vector<ObjectivePoint> points_of(const std::vector<Individual>& pop) {
    std::vector<ObjectivePoint> pts;
    pts.reserve(pop.size());
    for (const Individual& ind : pop) pts.push_back(ind.point);
    return pts;
}

std::vector<std::vector<int>> group_fronts(const std::vector<int>& ranks) {
    const int max_rank = ranks.empty() ? -1 : *std::max_element(ranks.begin(), ranks.end());
    std::vector<std::vector<int>> fronts(static_cast<std::size_t>(max_rank + 1));
    for (std::size_t i = 0; i < ranks.size(); ++i)
        fronts[static_cast<std::size_t>(ranks[i])].push_back(static_cast<int>(i));
    return fronts;
}

// Rank and per-front crowding for tournament selection.
struct Ranked {
    std::vector<int> ranks;
    std::vector<double> crowd;
};

Ranked rank_population(const std::vector<Individual>& pop, ConstraintMode mode) {
    Ranked r;
    const auto pts = points_of(pop);
    r.ranks = fast_nondominated_ranks(pts, mode);
    r.crowd.assign(pop.size(), 0.0);
    for (const auto& front : group_fronts(r.ranks)) {
        std::vector<ObjectivePoint> front_pts;
        front_pts.reserve(front.size());
        for (int i : front) front_pts.push_back(pts[static_cast<std::size_t>(i)]);
        const auto cd = nsga_crowding(front_pts);
        for (std::size_t k = 0; k < front.size(); ++k)
            r.crowd[static_cast<std::size_t>(front[k])] = cd[k];
    }
    return r;
}

int tournament(const Ranked& ranked, int n, Rng& rng) {
    const int a = rng.uniform_index(n);
    const int b = rng.uniform_index(n);
    const auto ia = static_cast<std::size_t>(a);
    const auto ib = static_cast<std::size_t>(b);
    if (ranked.ranks[ib] < ranked.ranks[ia]) return b;
    if (ranked.ranks[ib] == ranked.ranks[ia] && ranked.crowd[ib] > ranked.crowd[ia]) return b;
    return a;
}

void mutate(Schedule& s, double per_gene_rate, int n_cpus, Rng& rng) {
    for (int& gene : s.procs)
        if (rng.uniform01() < per_gene_rate) gene = rng.uniform_index(n_cpus);
}

// Fill the next population front by front; the last partial front is cut by
// crowding (larger first), ties by lower energy, makespan, index.
std::vector<Individual> environmental_selection(std::vector<Individual> combined, int n_sol,
                                                ConstraintMode mode) {
    const auto pts = points_of(combined);
    const auto ranks = fast_nondominated_ranks(pts, mode);
    std::vector<Individual> next;
    next.reserve(static_cast<std::size_t>(n_sol));
    for (const auto& front : group_fronts(ranks)) {
        if (next.size() + front.size() <= static_cast<std::size_t>(n_sol)) {
            for (int i : front) next.push_back(std::move(combined[static_cast<std::size_t>(i)]));
            continue;
        }
        std::vector<ObjectivePoint> front_pts;
        front_pts.reserve(front.size());
        for (int i : front) front_pts.push_back(pts[static_cast<std::size_t>(i)]);
        const auto cd = nsga_crowding(front_pts);

        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            if (cd[x] != cd[y]) return cd[x] > cd[y];
            const ObjectivePoint& px = front_pts[x];
            const ObjectivePoint& py = front_pts[y];
            if (px.energy != py.energy) return px.energy < py.energy;
            if (px.makespan != py.makespan) return px.makespan < py.makespan;
            return x < y;
        });
        for (std::size_t k = 0; next.size() < static_cast<std::size_t>(n_sol); ++k)
            next.push_back(std::move(combined[static_cast<std::size_t>(front[order[k]])]));
        break;
    }
    return next;
}

} // namespace

std::vector<int> fast_nondominated_ranks(const std::vector<ObjectivePoint>& points,
                                         ConstraintMode mode) {
    const std::size_t n = points.size();
    std::vector<int> dom_count(n, 0);
    std::vector<std::vector<int>> dominated(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j], mode)) {
                dominated[i].push_back(static_cast<int>(j));
                ++dom_count[j];
            } else if (dominates(points[j], points[i], mode)) {
                dominated[j].push_back(static_cast<int>(i));
                ++dom_count[i];
            }
        }
    }
    std::vector<int> ranks(n, -1);
    std::vector<int> current;
    for (std::size_t i = 0; i < n; ++i)
        if (dom_count[i] == 0) current.push_back(static_cast<int>(i));
    int rank = 0;
    while (!current.empty()) {
        std::vector<int> next;
        for (int i : current) {
            ranks[static_cast<std::size_t>(i)] = rank;
            for (int j : dominated[static_cast<std::size_t>(i)])
                if (--dom_count[static_cast<std::size_t>(j)] == 0) next.push_back(j);
        }
        current = std::move(next);
        ++rank;
    }
    return ranks;
}

std::vector<double> nsga_crowding(const std::vector<ObjectivePoint>& front) {
    const std::size_t n = front.size();
    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), kInf);
        return dist;
    }
    auto accumulate_axis = [&](auto value) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return value(front[a]) < value(front[b]);
        });
        dist[idx[0]] = kInf;
        dist[idx[n - 1]] = kInf;
        const double range = value(front[idx[n - 1]]) - value(front[idx[0]]);
        if (range <= 0.0) return;
        for (std::size_t k = 1; k + 1 < n; ++k)
            dist[idx[k]] += (value(front[idx[k + 1]]) - value(front[idx[k - 1]])) / range;
    };
    accumulate_axis([](const ObjectivePoint& p) { return p.energy; });
    accumulate_axis([](const ObjectivePoint& p) { return p.makespan; });
    return dist;
}

RunRecord run_nsga2(const ProblemInstance& instance, const NsgaParams& params) {
    validate(params);
    validate_instance(instance);
    const auto started = detail::RunClock::now();

    Rng rng(params.seed);
    CountingEvaluator evaluate_counted(
        instance,
        static_cast<std::uint64_t>(params.n_sol) * static_cast<std::uint64_t>(params.n_gen));

    const int n_cpus = instance.n_cpus();
    const double per_gene_rate = params.mutation_rate / static_cast<double>(instance.n_tasks());

    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(params.n_sol));
    for (int k = 0; k < params.n_sol; ++k) {
        Schedule s = random_schedule(instance, rng);
        const ObjectivePoint pt = evaluate_counted(s);
        pop.push_back(Individual{std::move(s), pt});
    }

    for (int t = 2; t <= params.n_gen; ++t) {
        const Ranked ranked = rank_population(pop, params.constraint_mode);

        std::vector<Individual> offspring;
        offspring.reserve(static_cast<std::size_t>(params.n_sol));
        while (offspring.size() < static_cast<std::size_t>(params.n_sol)) {
            const int i1 = tournament(ranked, params.n_sol, rng);
            const int i2 = tournament(ranked, params.n_sol, rng);
            Schedule c1 = pop[static_cast<std::size_t>(i1)].schedule;
            Schedule c2 = pop[static_cast<std::size_t>(i2)].schedule;
            if (rng.uniform01() < params.crossover_rate) {
                for (std::size_t j = 0; j < c1.procs.size(); ++j)
                    if (rng.uniform01() < 0.5) std::swap(c1.procs[j], c2.procs[j]);
            }
            mutate(c1, per_gene_rate, n_cpus, rng);
            mutate(c2, per_gene_rate, n_cpus, rng);

            const ObjectivePoint p1 = evaluate_counted(c1);
            offspring.push_back(Individual{std::move(c1), p1});
            if (offspring.size() < static_cast<std::size_t>(params.n_sol)) {
                const ObjectivePoint p2 = evaluate_counted(c2);
                offspring.push_back(Individual{std::move(c2), p2});
            }
        }

        std::vector<Individual> combined = std::move(pop);
        combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                        std::make_move_iterator(offspring.end()));
        pop = environmental_selection(std::move(combined), params.n_sol, params.constraint_mode);
    }

    std::vector<ArchiveEntry> final_entries;
    final_entries.reserve(pop.size());
    for (Individual& ind : pop)
        final_entries.push_back(ArchiveEntry{std::move(ind.schedule), ind.point});
    Archive archive = make_archive(std::move(final_entries),
                                   static_cast<std::size_t>(params.n_non),
                                   params.constraint_mode);

    return detail::make_run_record(instance, params.n_sol, params.seed, std::move(archive),
                                   evaluate_counted.count(), started);
}

} // namespace psched
