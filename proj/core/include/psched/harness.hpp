#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "psched/metrics.hpp"
#include "psched/model.hpp"
#include "psched/pareto.hpp"
#include "psched/run_record.hpp"

namespace psched {

// Algorithm ids: 0..8 the BSSO parameter grid, 9 MOSSO, 10 MOPSO, 11 NSGA-II.
inline constexpr int kAlgMosso = 9;
inline constexpr int kAlgMopso = 10;
inline constexpr int kAlgNsga2 = 11;

// (c_p, c_w) of BSSO grid column `alg_id` in 0..8: c_p steps through
// {0.1, 0.3, 0.5} and c_w through {0.1, 0.3, 0.5} within each c_p block.
// Throws std::invalid_argument outside the grid.
std::pair<double, double> bsso_grid(int alg_id);

// One algorithm in a plan: the id plus optional numeric overrides
// ("c_p", "c_w", "crossover_rate", "mutation_rate", "inertia", "c1", "c2",
// "n_non"). Unknown keys are rejected at dispatch.
struct AlgorithmSpec {
    int id = 0;
    std::map<std::string, double> overrides;
};

struct ExperimentPlan {
    std::vector<ProblemInstance> instances;
    std::vector<AlgorithmSpec> algorithms;
    std::vector<int> n_sol_values;
    int n_gen = 200;
    int n_run = 30;
    std::uint64_t base_seed = 0;
    ConstraintMode constraint_mode = ConstraintMode::feasibility_first;
};

void validate_plan(const ExperimentPlan& plan);

// Seed of one (instance, algorithm, n_sol, run) cell, derived so any cell is
// re-runnable in isolation.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t instance_index, int alg_id,
                       int n_sol, int run_index);

// Dispatches one run to the right algorithm with the grid/stock parameters
// plus overrides. Fills alg_id; the caller assigns run_index.
RunRecord execute_run(const ProblemInstance& instance, const AlgorithmSpec& alg, int n_sol,
                      int n_gen, ConstraintMode mode, std::uint64_t seed);

struct RunPlanOptions {
    std::string out_dir; // empty: keep records in memory only
    int workers = 0;     // 0: PARETO_SCHED_WORKERS env var, then hardware count
};

// Executes every (instance x algorithm x n_sol x run) cell of the plan.
// Records are returned in deterministic plan order regardless of the worker
// count, and appended incrementally to one JSON-lines file per cell when
// out_dir is set.
std::vector<RunRecord> run_plan(const ExperimentPlan& plan, const RunPlanOptions& options);

// Worker count resolution: explicit value, else PARETO_SCHED_WORKERS, else
// the hardware concurrency. Throws std::invalid_argument on a malformed
// environment value.
int resolve_worker_count(int requested);

// Summary column order; `t` is wall-clock seconds.
enum class Metric { nn, np, gd, sp, t, fe, fm };
inline constexpr std::size_t kNumMetrics = 7;
extern const std::array<const char*, kNumMetrics> kMetricNames;

// Whether the best Avg value of a metric is the largest (counts) or the
// smallest (everything else).
bool metric_prefers_max(Metric m);

struct SummaryRow {
    std::string instance;
    int n_sol = 0;
    int alg_id = 0;
    std::array<double, kNumMetrics> avg{};
    std::array<double, kNumMetrics> stddev{};
    std::array<bool, kNumMetrics> is_best{};
};

// Per-instance reference fronts: explicit frozen fronts, or pooled from the
// records themselves when empty.
struct FrontPolicy {
    std::map<std::string, ReferenceFront> external;
};

// Scores every record against its instance's front (GD, SP, N_n, N_p) and
// aggregates one row per (instance, n_sol, algorithm) cell with sample mean
// and sample (N-1) standard deviation. Flags the best Avg per metric within
// each (instance, n_sol) group.
std::vector<SummaryRow> score_and_summarize(const std::vector<RunRecord>& records,
                                            const FrontPolicy& policy);

// Recomputes the is_best flags; used when rows come back from a CSV.
void mark_best(std::vector<SummaryRow>& rows);

} // namespace psched
