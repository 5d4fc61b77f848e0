// Archive maintenance costs: the pairwise union filter against the sorted
// group-comparison merge, and crowding truncation.

#include <benchmark/benchmark.h>

#include "psched/pareto.hpp"
#include "psched/rng.hpp"

using namespace psched;

namespace {

std::vector<ArchiveEntry> lattice_entries(Rng& rng, int count, int grid) {
    std::vector<ArchiveEntry> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double e = static_cast<double>(rng.uniform_index(grid));
        const double m = static_cast<double>(rng.uniform_index(grid));
        out.push_back(ArchiveEntry{Schedule{}, ObjectivePoint{e, m, true}});
    }
    return out;
}

struct Fixture {
    Archive previous;
    std::vector<ArchiveEntry> offspring;
    std::vector<ArchiveEntry> all;
};

Fixture make_fixture(int n) {
    Rng rng(static_cast<std::uint64_t>(n));
    Fixture f;
    f.previous = make_archive(lattice_entries(rng, n, 4 * n), static_cast<std::size_t>(2 * n),
                              ConstraintMode::ignore);
    f.offspring = lattice_entries(rng, n, 4 * n);
    f.all = f.previous.entries;
    f.all.insert(f.all.end(), f.offspring.begin(), f.offspring.end());
    return f;
}

} // namespace

static void BM_pairwise_union_filter(benchmark::State& state) {
    const Fixture f = make_fixture(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(nondominated_filter(f.all, ConstraintMode::ignore));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_pairwise_union_filter)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_group_compare_merge(benchmark::State& state) {
    const Fixture f = make_fixture(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(group_compare(f.previous, f.offspring, ConstraintMode::ignore));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_group_compare_merge)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_crowding_truncation(benchmark::State& state) {
    Rng rng(77);
    const int n = static_cast<int>(state.range(0));
    // staircase front: every entry survives the filter, crowding does the work
    std::vector<ArchiveEntry> front;
    for (int k = 0; k < n; ++k)
        front.push_back(
            ArchiveEntry{Schedule{}, ObjectivePoint{static_cast<double>(k),
                                                    static_cast<double>(n - k), true}});
    for (auto _ : state)
        benchmark::DoNotOptimize(truncate_by_crowding(front, static_cast<std::size_t>(n / 2)));
}
BENCHMARK(BM_crowding_truncation)->RangeMultiplier(2)->Range(64, 1024);
