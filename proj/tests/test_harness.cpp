#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <unistd.h>

#include "psched/benchgen.hpp"
#include "psched/harness.hpp"
#include "psched/io.hpp"

#include "oracles.hpp"

using namespace psched;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("psched_test_" + tag + "_" +
                                            std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

ExperimentPlan tiny_plan(std::uint64_t seed) {
    ExperimentPlan plan;
    plan.instances = {generate(BenchmarkSpec{6, 2, 30.0, 404})};
    plan.algorithms = {AlgorithmSpec{7, {}}, AlgorithmSpec{kAlgNsga2, {}}};
    plan.n_sol_values = {6};
    plan.n_gen = 8;
    plan.n_run = 3;
    plan.base_seed = seed;
    plan.constraint_mode = ConstraintMode::ignore;
    return plan;
}

bool same_record_modulo_wall(const RunRecord& a, const RunRecord& b) {
    if (a.alg_id != b.alg_id || a.instance_name != b.instance_name || a.n_sol != b.n_sol ||
        a.run_index != b.run_index || a.seed != b.seed ||
        a.evaluation_count != b.evaluation_count || a.mean_energy != b.mean_energy ||
        a.mean_makespan != b.mean_makespan ||
        a.archive.entries.size() != b.archive.entries.size())
        return false;
    for (std::size_t i = 0; i < a.archive.entries.size(); ++i) {
        const ArchiveEntry& x = a.archive.entries[i];
        const ArchiveEntry& y = b.archive.entries[i];
        if (!(x.schedule == y.schedule) || x.point.energy != y.point.energy ||
            x.point.makespan != y.point.makespan)
            return false;
    }
    return true;
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("the nine-column parameter grid") {
    // c_p blocks of 0.1 / 0.3 / 0.5 with c_w cycling 0.1 / 0.3 / 0.5;
    // cumulative thresholds must match the documented C_p / C_w rows.
    const double want_cp[9] = {0.1, 0.1, 0.1, 0.3, 0.3, 0.3, 0.5, 0.5, 0.5};
    const double want_cw_threshold[9] = {0.2, 0.4, 0.6, 0.4, 0.6, 0.8, 0.6, 0.8, 1.0};
    for (int id = 0; id < 9; ++id) {
        const auto [c_p, c_w] = bsso_grid(id);
        CHECK(c_p == want_cp[id]);
        CHECK(c_p + c_w == doctest::Approx(want_cw_threshold[id]).epsilon(1e-15));
    }
    CHECK(bsso_grid(7).first == 0.5);
    CHECK(bsso_grid(7).second == 0.3);
    CHECK(bsso_grid(8).first == 0.5);
    CHECK(bsso_grid(8).second == 0.5);
    CHECK_THROWS_AS(bsso_grid(9), std::invalid_argument);
    CHECK_THROWS_AS(bsso_grid(-1), std::invalid_argument);
}

TEST_CASE("cell seeds are distinct across every component") {
    std::set<std::uint64_t> seeds;
    int cells = 0;
    for (std::size_t inst = 0; inst < 3; ++inst)
        for (int alg = 0; alg < 12; ++alg)
            for (int n_sol : {50, 100, 150})
                for (int run = 0; run < 5; ++run) {
                    seeds.insert(run_seed(9001, inst, alg, n_sol, run));
                    ++cells;
                }
    CHECK(static_cast<int>(seeds.size()) == cells);
    CHECK(run_seed(1, 0, 0, 50, 0) != run_seed(2, 0, 0, 50, 0));
    CHECK(run_seed(1, 0, 0, 50, 0) == run_seed(1, 0, 0, 50, 0));
}

TEST_CASE("execute_run dispatches every algorithm id with the exact budget") {
    const ProblemInstance inst = generate(BenchmarkSpec{5, 2, 30.0, 3});
    for (int id = 0; id <= kAlgNsga2; ++id) {
        const RunRecord rec = execute_run(inst, AlgorithmSpec{id, {}}, 5, 6,
                                          ConstraintMode::ignore, 17);
        CHECK(rec.alg_id == id);
        CHECK(rec.evaluation_count == 30);
        CHECK(!rec.archive.entries.empty());
        CHECK(rec.n_sol == 5);
    }
    CHECK_THROWS_AS(execute_run(inst, AlgorithmSpec{12, {}}, 5, 6, ConstraintMode::ignore, 17),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        execute_run(inst, AlgorithmSpec{7, {{"bogus", 1.0}}}, 5, 6, ConstraintMode::ignore, 17),
        std::invalid_argument);
    CHECK_NOTHROW(
        execute_run(inst, AlgorithmSpec{10, {{"inertia", 0.5}}}, 5, 6, ConstraintMode::ignore, 17));
}

TEST_CASE("run_plan produces one deterministic record per cell") {
    const ExperimentPlan plan = tiny_plan(11);
    RunPlanOptions opts;
    const auto records = run_plan(plan, opts);
    REQUIRE(records.size() == 6); // 1 instance x 2 algorithms x 1 n_sol x 3 runs

    std::set<std::uint64_t> seeds;
    for (const RunRecord& rec : records) seeds.insert(rec.seed);
    CHECK(seeds.size() == records.size());

    // isolated re-run of one cell reproduces the record
    const RunRecord& probe = records[4];
    const AlgorithmSpec alg = plan.algorithms[probe.alg_id == 7 ? 0 : 1];
    RunRecord again = execute_run(plan.instances[0], alg, probe.n_sol, plan.n_gen,
                                  plan.constraint_mode,
                                  run_seed(plan.base_seed, 0, probe.alg_id, probe.n_sol,
                                           probe.run_index));
    again.run_index = probe.run_index;
    CHECK(same_record_modulo_wall(probe, again));
}

TEST_CASE("run_plan persists records that reload identically") {
    TempDir dir("persist");
    const ExperimentPlan plan = tiny_plan(13);
    RunPlanOptions opts;
    opts.out_dir = dir.path.string();
    const auto records = run_plan(plan, opts);

    const auto loaded = load_records(dir.path);
    REQUIRE(loaded.size() == records.size());
    for (const RunRecord& rec : records) {
        const auto it = std::find_if(loaded.begin(), loaded.end(), [&](const RunRecord& r) {
            return r.alg_id == rec.alg_id && r.run_index == rec.run_index &&
                   r.n_sol == rec.n_sol && r.instance_name == rec.instance_name;
        });
        REQUIRE(it != loaded.end());
        CHECK(same_record_modulo_wall(*it, rec));
        CHECK(it->wall_seconds == rec.wall_seconds); // serialization is lossless
    }

    // summaries recomputed from disk equal the live ones
    const auto live = score_and_summarize(records, FrontPolicy{});
    const auto replayed = score_and_summarize(loaded, FrontPolicy{});
    REQUIRE(live.size() == replayed.size());
    for (std::size_t i = 0; i < live.size(); ++i) {
        CHECK(live[i].instance == replayed[i].instance);
        CHECK(live[i].alg_id == replayed[i].alg_id);
        for (std::size_t m = 0; m < kNumMetrics; ++m) {
            CHECK(live[i].avg[m] == replayed[i].avg[m]);
            CHECK(live[i].stddev[m] == replayed[i].stddev[m]);
        }
    }
}

TEST_CASE("worker count does not change the records") {
    const ExperimentPlan plan = tiny_plan(17);
    RunPlanOptions serial;
    serial.workers = 1;
    RunPlanOptions parallel;
    parallel.workers = 3;
    const auto a = run_plan(plan, serial);
    const auto b = run_plan(plan, parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_record_modulo_wall(a[i], b[i]));
}

TEST_CASE("scoring: pooled front, best flags, degenerate spread") {
    const ExperimentPlan plan = tiny_plan(19);
    const auto records = run_plan(plan, RunPlanOptions{});
    const auto rows = score_and_summarize(records, FrontPolicy{});
    REQUIRE(rows.size() == 2); // one per algorithm

    // pooled front dominates-or-equals every archive point
    std::vector<Archive> archives;
    for (const RunRecord& rec : records) archives.push_back(rec.archive);
    const ReferenceFront front = build_simulated_front(archives);
    for (const RunRecord& rec : records)
        for (const ArchiveEntry& e : rec.archive.entries)
            for (const ObjectivePoint& f : front.points)
                CHECK_FALSE(dominates(e.point, f, ConstraintMode::ignore));

    // per metric, at least one row in the group carries the best flag, and
    // flags agree with a recomputation
    for (std::size_t m = 0; m < kNumMetrics; ++m) {
        bool any = false;
        for (const SummaryRow& row : rows) any = any || row.is_best[m];
        CHECK(any);
    }
    auto recomputed = rows;
    mark_best(recomputed);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t m = 0; m < kNumMetrics; ++m)
            CHECK(rows[i].is_best[m] == recomputed[i].is_best[m]);

    // two copies of the same record: zero spread in every column
    const std::vector<RunRecord> twice{records[0], records[0]};
    const auto flat = score_and_summarize(twice, FrontPolicy{});
    REQUIRE(flat.size() == 1);
    for (std::size_t m = 0; m < kNumMetrics; ++m) CHECK(flat[0].stddev[m] == 0.0);
    // its archive is the pooled front, so GD is exactly zero
    CHECK(flat[0].avg[static_cast<std::size_t>(Metric::gd)] == 0.0);
}

TEST_CASE("scoring against an external front is reproducible") {
    const ExperimentPlan plan = tiny_plan(23);
    const auto records = run_plan(plan, RunPlanOptions{});
    std::vector<Archive> archives;
    for (const RunRecord& rec : records) archives.push_back(rec.archive);

    FrontPolicy frozen;
    frozen.external[plan.instances[0].name] = build_simulated_front(archives);
    const auto a = score_and_summarize(records, frozen);
    const auto b = score_and_summarize(records, frozen);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t m = 0; m < kNumMetrics; ++m) CHECK(a[i].avg[m] == b[i].avg[m]);

    FrontPolicy wrong;
    wrong.external["nonexistent"] = frozen.external.begin()->second;
    CHECK_THROWS_AS(score_and_summarize(records, wrong), std::invalid_argument);
}

TEST_CASE("record JSON lines round-trip bit-exactly") {
    const ProblemInstance inst = generate(BenchmarkSpec{5, 2, 30.0, 31});
    RunRecord rec = execute_run(inst, AlgorithmSpec{4, {}}, 4, 5, ConstraintMode::ignore, 77);
    rec.run_index = 9;
    const std::string line = record_to_json_line(rec);
    const RunRecord back = record_from_json_line(line);
    CHECK(same_record_modulo_wall(rec, back));
    CHECK(back.wall_seconds == rec.wall_seconds);
    CHECK(back.archive.capacity == rec.archive.capacity);
    for (std::size_t i = 0; i < rec.archive.entries.size(); ++i)
        CHECK(back.archive.entries[i].point.feasible == rec.archive.entries[i].point.feasible);

    CHECK_THROWS(record_from_json_line("{\"alg\": 1}"));
    CHECK_THROWS(record_from_json_line("not json"));
}

TEST_CASE("instance JSON: fixed field order and lossless values") {
    const ProblemInstance inst = generate(BenchmarkSpec{4, 3, 30.0, 101});
    const std::string text = instance_to_json(inst);
    CHECK(text.find("\"name\"") < text.find("\"deadline\""));
    CHECK(text.find("\"deadline\"") < text.find("\"tasks\""));
    CHECK(text.find("\"tasks\"") < text.find("\"cpus\""));
    CHECK(text.find("\"speed\"") < text.find("\"energy\""));

    const ProblemInstance back = instance_from_json(text);
    CHECK(back.name == inst.name);
    CHECK(back.deadline == inst.deadline);
    CHECK(back.task_sizes == inst.task_sizes);
    CHECK(back.cpu_speeds == inst.cpu_speeds);
    CHECK(back.cpu_energies == inst.cpu_energies);

    CHECK_THROWS(instance_from_json("{\"name\": \"x\"}"));
    CHECK_THROWS(instance_from_json("{"));
}

TEST_CASE("plan JSON: generator specs, inline instances, overrides") {
    const ProblemInstance inline_inst = generate(BenchmarkSpec{4, 2, 30.0, 55});
    const std::string plan_text = std::string("{")
        + "\"instances\":[{\"tasks\":5,\"cpus\":3,\"deadline\":30,\"seed\":8}, "
        + instance_to_json(inline_inst) + "],"
        + "\"algorithms\":[7, {\"id\":10, \"inertia\":0.5}],"
        + "\"nsol\":[4],\"ngen\":6,\"nrun\":2,\"seed\":99,"
        + "\"constraint_mode\":\"ignore\"}";
    const ExperimentPlan plan = plan_from_json(plan_text);
    CHECK(plan.instances.size() == 2);
    CHECK(plan.instances[0].n_tasks() == 5);
    CHECK(plan.instances[1].name == inline_inst.name);
    REQUIRE(plan.algorithms.size() == 2);
    CHECK(plan.algorithms[0].id == 7);
    CHECK(plan.algorithms[1].id == 10);
    CHECK(plan.algorithms[1].overrides.at("inertia") == 0.5);
    CHECK(plan.constraint_mode == ConstraintMode::ignore);

    CHECK_THROWS(plan_from_json("{\"instances\":[]}"));
    CHECK_THROWS(plan_from_json("{\"instances\":[{\"tasks\":5,\"cpus\":3}],"
                                "\"algorithms\":[99],\"nsol\":[4],\"ngen\":6,\"nrun\":2,"
                                "\"seed\":1}"));
}

TEST_CASE("summary CSV round-trips with the pinned header") {
    const ExperimentPlan plan = tiny_plan(29);
    const auto rows = score_and_summarize(run_plan(plan, RunPlanOptions{}), FrontPolicy{});
    const std::string csv = summary_to_csv(rows);
    CHECK(csv.rfind("instance,n_sol,alg,Avg(N_n),Std(N_n),Avg(N_p),Std(N_p),Avg(GD),Std(GD),"
                    "Avg(SP),Std(SP),Avg(T),Std(T),Avg(F_e),Std(F_e),Avg(F_m),Std(F_m)\n",
                    0) == 0);
    const auto back = summary_from_csv(csv);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].instance == rows[i].instance);
        CHECK(back[i].n_sol == rows[i].n_sol);
        CHECK(back[i].alg_id == rows[i].alg_id);
        for (std::size_t m = 0; m < kNumMetrics; ++m) {
            CHECK(back[i].avg[m] == rows[i].avg[m]);
            CHECK(back[i].stddev[m] == rows[i].stddev[m]);
            CHECK(back[i].is_best[m] == rows[i].is_best[m]);
        }
    }
    CHECK_THROWS(summary_from_csv("instance,alg\nx,1\n"));

    SummaryRow awkward;
    awkward.instance = "a,b";
    CHECK_THROWS(summary_to_csv({awkward}));
}

TEST_CASE("worker count resolution") {
    CHECK(resolve_worker_count(4) == 4);

    ::setenv("PARETO_SCHED_WORKERS", "3", 1);
    CHECK(resolve_worker_count(0) == 3);
    CHECK(resolve_worker_count(2) == 2); // explicit beats the environment

    ::setenv("PARETO_SCHED_WORKERS", "zero", 1);
    CHECK_THROWS_AS(resolve_worker_count(0), std::invalid_argument);
    ::setenv("PARETO_SCHED_WORKERS", "-2", 1);
    CHECK_THROWS_AS(resolve_worker_count(0), std::invalid_argument);

    ::unsetenv("PARETO_SCHED_WORKERS");
    CHECK(resolve_worker_count(0) >= 1);
}

TEST_CASE("plan validation") {
    ExperimentPlan plan = tiny_plan(1);
    CHECK_NOTHROW(validate_plan(plan));
    plan.n_run = 0;
    CHECK_THROWS_AS(validate_plan(plan), std::invalid_argument);
    plan = tiny_plan(1);
    plan.algorithms[0].id = 15;
    CHECK_THROWS_AS(validate_plan(plan), std::invalid_argument);
    plan = tiny_plan(1);
    plan.n_sol_values = {};
    CHECK_THROWS_AS(validate_plan(plan), std::invalid_argument);
}

} // TEST_SUITE
