#include "psched/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "psched/baselines.hpp"
#include "psched/bsso.hpp"
#include "psched/io.hpp"
#include "psched/rng.hpp"

namespace psched {

const std::array<const char*, kNumMetrics> kMetricNames = {"N_n", "N_p", "GD", "SP",
                                                           "T",   "F_e", "F_m"};

bool metric_prefers_max(Metric m) { return m == Metric::nn || m == Metric::np; }

std::pair<double, double> bsso_grid(int alg_id) {
    static constexpr double kCp[9] = {0.1, 0.1, 0.1, 0.3, 0.3, 0.3, 0.5, 0.5, 0.5};
    static constexpr double kCw[9] = {0.1, 0.3, 0.5, 0.1, 0.3, 0.5, 0.1, 0.3, 0.5};
    if (alg_id < 0 || alg_id > 8)
        throw std::invalid_argument("bsso_grid: algorithm id must be in 0..8");
    return {kCp[alg_id], kCw[alg_id]};
}

void validate_plan(const ExperimentPlan& plan) {
    if (plan.instances.empty()) throw std::invalid_argument("plan has no instances");
    if (plan.algorithms.empty()) throw std::invalid_argument("plan has no algorithms");
    if (plan.n_sol_values.empty()) throw std::invalid_argument("plan has no n_sol values");
    if (plan.n_gen < 1) throw std::invalid_argument("ngen must be positive");
    if (plan.n_run < 1) throw std::invalid_argument("nrun must be positive");
    for (const ProblemInstance& inst : plan.instances) validate_instance(inst);
    for (const AlgorithmSpec& alg : plan.algorithms)
        if (alg.id < 0 || alg.id > kAlgNsga2)
            throw std::invalid_argument("algorithm id must be in 0..11");
    for (int n : plan.n_sol_values)
        if (n < 1) throw std::invalid_argument("n_sol must be positive");
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t instance_index, int alg_id,
                       int n_sol, int run_index) {
    return mix_seed({base_seed, static_cast<std::uint64_t>(instance_index),
                     static_cast<std::uint64_t>(alg_id), static_cast<std::uint64_t>(n_sol),
                     static_cast<std::uint64_t>(run_index)});
}

namespace {

double override_or(const AlgorithmSpec& alg, const std::string& key, double fallback) {
    const auto it = alg.overrides.find(key);
    return it == alg.overrides.end() ? fallback : it->second;
}

void check_override_keys(const AlgorithmSpec& alg,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : alg.overrides) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known)
            throw std::invalid_argument("algorithm " + std::to_string(alg.id) +
                                        ": unknown parameter override '" + key + "'");
    }
}

} // namespace

RunRecord execute_run(const ProblemInstance& instance, const AlgorithmSpec& alg, int n_sol,
                      int n_gen, ConstraintMode mode, std::uint64_t seed) {
    const int n_non = static_cast<int>(override_or(alg, "n_non", n_sol));
    RunRecord rec;
    if (alg.id >= 0 && alg.id <= 8) {
        check_override_keys(alg, {"c_p", "c_w", "n_non"});
        const auto [c_p, c_w] = bsso_grid(alg.id);
        BssoParams p;
        p.c_p = override_or(alg, "c_p", c_p);
        p.c_w = override_or(alg, "c_w", c_w);
        p.n_sol = n_sol;
        p.n_gen = n_gen;
        p.n_non = n_non;
        p.constraint_mode = mode;
        p.seed = seed;
        rec = run_bsso(instance, p);
    } else if (alg.id == kAlgMosso) {
        check_override_keys(alg, {"n_non"});
        MossoParams p;
        p.n_sol = n_sol;
        p.n_gen = n_gen;
        p.n_non = n_non;
        p.constraint_mode = mode;
        p.seed = seed;
        rec = run_mosso(instance, p);
    } else if (alg.id == kAlgMopso) {
        check_override_keys(alg, {"inertia", "c1", "c2", "n_non"});
        MopsoParams p;
        p.inertia = override_or(alg, "inertia", p.inertia);
        p.c1 = override_or(alg, "c1", p.c1);
        p.c2 = override_or(alg, "c2", p.c2);
        p.n_sol = n_sol;
        p.n_gen = n_gen;
        p.n_non = n_non;
        p.constraint_mode = mode;
        p.seed = seed;
        rec = run_mopso(instance, p);
    } else if (alg.id == kAlgNsga2) {
        check_override_keys(alg, {"crossover_rate", "mutation_rate", "n_non"});
        NsgaParams p;
        p.crossover_rate = override_or(alg, "crossover_rate", p.crossover_rate);
        p.mutation_rate = override_or(alg, "mutation_rate", p.mutation_rate);
        p.n_sol = n_sol;
        p.n_gen = n_gen;
        p.n_non = n_non;
        p.constraint_mode = mode;
        p.seed = seed;
        rec = run_nsga2(instance, p);
    } else {
        throw std::invalid_argument("unknown algorithm id " + std::to_string(alg.id));
    }
    rec.alg_id = alg.id;
    return rec;
}

int resolve_worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PARETO_SCHED_WORKERS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || value < 1)
            throw std::invalid_argument("PARETO_SCHED_WORKERS must be a positive integer");
        return static_cast<int>(value);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<RunRecord> run_plan(const ExperimentPlan& plan, const RunPlanOptions& options) {
    validate_plan(plan);

    struct Cell {
        std::size_t inst;
        std::size_t alg;
        std::size_t nsol;
        int run;
    };
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < plan.instances.size(); ++i)
        for (std::size_t a = 0; a < plan.algorithms.size(); ++a)
            for (std::size_t s = 0; s < plan.n_sol_values.size(); ++s)
                for (int r = 0; r < plan.n_run; ++r) cells.push_back(Cell{i, a, s, r});

    std::vector<RunRecord> records(cells.size());
    const bool persist = !options.out_dir.empty();
    const std::filesystem::path out(options.out_dir);
    if (persist) std::filesystem::create_directories(out);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex io_mutex;
    std::string first_error;

    auto work = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& cell = cells[i];
            try {
                const ProblemInstance& inst = plan.instances[cell.inst];
                const AlgorithmSpec& alg = plan.algorithms[cell.alg];
                const int n_sol = plan.n_sol_values[cell.nsol];
                const std::uint64_t seed =
                    run_seed(plan.base_seed, cell.inst, alg.id, n_sol, cell.run);
                RunRecord rec =
                    execute_run(inst, alg, n_sol, plan.n_gen, plan.constraint_mode, seed);
                rec.run_index = cell.run;
                if (persist) {
                    // Append-only, one file per cell; partial results survive
                    // an abort.
                    const std::lock_guard<std::mutex> lock(io_mutex);
                    std::ofstream file(cell_file(out, inst.name, alg.id, n_sol),
                                       std::ios::app);
                    if (!file) throw std::runtime_error("cannot open results file for append");
                    file << record_to_json_line(rec) << '\n';
                    if (!file) throw std::runtime_error("write to results file failed");
                }
                records[i] = std::move(rec);
            } catch (const std::exception& e) {
                const std::lock_guard<std::mutex> lock(io_mutex);
                if (!failed.exchange(true)) first_error = e.what();
                return;
            }
        }
    };

    const int workers = std::min<int>(resolve_worker_count(options.workers),
                                      static_cast<int>(cells.size()));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers) - 1);
        for (int w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
        for (std::thread& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error("run_plan aborted: " + first_error);
    return records;
}

namespace {

std::array<double, kNumMetrics> record_samples(const RunRecord& rec,
                                               const ReferenceFront& front) {
    std::vector<ObjectivePoint> points;
    points.reserve(rec.archive.entries.size());
    for (const ArchiveEntry& e : rec.archive.entries) points.push_back(e.point);

    const CountStats counts = count_stats(rec.archive, front);
    std::array<double, kNumMetrics> s{};
    s[static_cast<std::size_t>(Metric::nn)] = static_cast<double>(counts.n_n);
    s[static_cast<std::size_t>(Metric::np)] = static_cast<double>(counts.n_p);
    s[static_cast<std::size_t>(Metric::gd)] = gd(points, front);
    s[static_cast<std::size_t>(Metric::sp)] = sp(points, front).value;
    s[static_cast<std::size_t>(Metric::t)] = rec.wall_seconds;
    s[static_cast<std::size_t>(Metric::fe)] = rec.mean_energy;
    s[static_cast<std::size_t>(Metric::fm)] = rec.mean_makespan;
    return s;
}

} // namespace

std::vector<SummaryRow> score_and_summarize(const std::vector<RunRecord>& records,
                                            const FrontPolicy& policy) {
    if (records.empty()) throw std::invalid_argument("score_and_summarize: no records");

    std::map<std::string, ReferenceFront> fronts = policy.external;
    if (fronts.empty()) {
        std::map<std::string, std::vector<Archive>> pools;
        for (const RunRecord& rec : records) pools[rec.instance_name].push_back(rec.archive);
        for (auto& [name, archives] : pools) fronts.emplace(name, build_simulated_front(archives));
    }

    using CellKey = std::tuple<std::string, int, int>; // instance, n_sol, alg
    std::map<CellKey, std::vector<std::array<double, kNumMetrics>>> cells;
    for (const RunRecord& rec : records) {
        const auto it = fronts.find(rec.instance_name);
        if (it == fronts.end())
            throw std::invalid_argument("no reference front for instance '" +
                                        rec.instance_name + "'");
        cells[CellKey{rec.instance_name, rec.n_sol, rec.alg_id}].push_back(
            record_samples(rec, it->second));
    }

    std::vector<SummaryRow> rows;
    rows.reserve(cells.size());
    for (const auto& [key, samples] : cells) {
        SummaryRow row;
        row.instance = std::get<0>(key);
        row.n_sol = std::get<1>(key);
        row.alg_id = std::get<2>(key);
        const double n = static_cast<double>(samples.size());
        for (std::size_t m = 0; m < kNumMetrics; ++m) {
            double mean = 0.0;
            for (const auto& s : samples) mean += s[m];
            mean /= n;
            double var = 0.0;
            for (const auto& s : samples) var += (s[m] - mean) * (s[m] - mean);
            row.avg[m] = mean;
            row.stddev[m] = samples.size() < 2 ? 0.0 : std::sqrt(var / (n - 1.0));
        }
        rows.push_back(std::move(row));
    }
    mark_best(rows);
    return rows;
}

void mark_best(std::vector<SummaryRow>& rows) {
    for (SummaryRow& row : rows) row.is_best.fill(false);

    std::map<std::pair<std::string, int>, std::vector<SummaryRow*>> groups;
    for (SummaryRow& row : rows) groups[{row.instance, row.n_sol}].push_back(&row);

    for (auto& [key, group] : groups) {
        for (std::size_t m = 0; m < kNumMetrics; ++m) {
            const bool prefer_max = metric_prefers_max(static_cast<Metric>(m));
            double best = group.front()->avg[m];
            for (const SummaryRow* row : group)
                best = prefer_max ? std::max(best, row->avg[m]) : std::min(best, row->avg[m]);
            for (SummaryRow* row : group)
                if (row->avg[m] == best) row->is_best[m] = true;
        }
    }
}

} // namespace psched
