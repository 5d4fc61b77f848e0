// Whole-run costs of the four algorithms on the small benchmark size.

#include <benchmark/benchmark.h>

#include "psched/baselines.hpp"
#include "psched/benchgen.hpp"
#include "psched/bsso.hpp"

using namespace psched;

namespace {

const ProblemInstance& small_instance() {
    static const ProblemInstance inst = generate(BenchmarkSpec{20, 5, 30.0, 4242});
    return inst;
}

} // namespace

static void BM_evaluate(benchmark::State& state) {
    const ProblemInstance& inst = small_instance();
    Rng rng(1);
    const Schedule sched = random_schedule(inst, rng);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(inst, sched));
}
BENCHMARK(BM_evaluate);

static void BM_bsso_run(benchmark::State& state) {
    BssoParams p;
    p.c_p = 0.5;
    p.c_w = 0.3;
    p.n_sol = 50;
    p.n_gen = static_cast<int>(state.range(0));
    p.n_non = 50;
    p.constraint_mode = ConstraintMode::ignore;
    p.seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(run_bsso(small_instance(), p));
}
BENCHMARK(BM_bsso_run)->Arg(50)->Arg(200);

static void BM_mosso_run(benchmark::State& state) {
    MossoParams p;
    p.n_sol = 50;
    p.n_gen = static_cast<int>(state.range(0));
    p.n_non = 50;
    p.constraint_mode = ConstraintMode::ignore;
    p.seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(run_mosso(small_instance(), p));
}
BENCHMARK(BM_mosso_run)->Arg(50)->Arg(200);

static void BM_mopso_run(benchmark::State& state) {
    MopsoParams p;
    p.n_sol = 50;
    p.n_gen = static_cast<int>(state.range(0));
    p.n_non = 50;
    p.constraint_mode = ConstraintMode::ignore;
    p.seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(run_mopso(small_instance(), p));
}
BENCHMARK(BM_mopso_run)->Arg(50)->Arg(200);

static void BM_nsga2_run(benchmark::State& state) {
    NsgaParams p;
    p.n_sol = 50;
    p.n_gen = static_cast<int>(state.range(0));
    p.n_non = 50;
    p.constraint_mode = ConstraintMode::ignore;
    p.seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(run_nsga2(small_instance(), p));
}
BENCHMARK(BM_nsga2_run)->Arg(50)->Arg(200);

BENCHMARK_MAIN();
