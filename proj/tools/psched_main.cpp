#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psched/benchgen.hpp"
#include "psched/harness.hpp"
#include "psched/io.hpp"
#include "psched/metrics.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;

namespace {

using namespace psched;

fs::path per_instance_front(const fs::path& base, const std::string& instance) {
    fs::path p = base;
    const std::string ext = p.extension().string();
    p.replace_extension();
    return p.string() + "." + sanitize_name(instance) + ext;
}

// Reference fronts for `score`/`plot`: a single file when the results hold
// one instance, otherwise per-instance siblings named <stem>.<instance>.csv.
std::map<std::string, ReferenceFront> load_fronts(const fs::path& base,
                                                  const std::set<std::string>& instances) {
    std::map<std::string, ReferenceFront> fronts;
    if (instances.size() == 1 && fs::exists(base)) {
        fronts[*instances.begin()] = load_front(base);
        return fronts;
    }
    for (const std::string& name : instances) {
        const fs::path p = per_instance_front(base, name);
        if (!fs::exists(p))
            throw std::runtime_error("front file not found: " + p.string() +
                                     " (generate it with `psched front`)");
        fronts[name] = load_front(p);
    }
    return fronts;
}

std::string cell_label(double v, bool best) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    std::string s(buf);
    if (best) s += "*";
    return s;
}

int cmd_gen(int tasks, int cpus, double deadline, std::uint64_t seed, const std::string& out) {
    BenchmarkSpec spec{tasks, cpus, deadline, seed};
    const ProblemInstance inst = generate(spec);
    save_instance(inst, out);
    std::cout << "wrote " << out << " (" << inst.name << ": " << inst.n_tasks() << " tasks, "
              << inst.n_cpus() << " cpus, deadline " << format_double(inst.deadline) << ")\n";
    return 0;
}

int cmd_run_plan(const std::string& plan_path, const std::string& out_dir, int workers) {
    const ExperimentPlan plan = load_plan(plan_path);
    RunPlanOptions options;
    options.out_dir = out_dir;
    options.workers = workers;
    const auto records = run_plan(plan, options);
    std::cout << records.size() << " runs -> " << out_dir << "\n";
    return 0;
}

int cmd_run_cell(int alg_id, const std::string& instance_path, int n_sol, int n_gen, int n_run,
                 std::uint64_t base_seed, std::size_t inst_index, const std::string& mode_name,
                 const std::string& out_dir) {
    const ProblemInstance inst = load_instance(instance_path);
    const ConstraintMode mode = constraint_mode_from_string(mode_name);
    const AlgorithmSpec alg{alg_id, {}};
    fs::create_directories(out_dir);
    const fs::path file = cell_file(out_dir, inst.name, alg_id, n_sol);
    std::ofstream sink(file, std::ios::app);
    if (!sink) throw std::runtime_error("cannot open " + file.string());
    for (int run = 0; run < n_run; ++run) {
        const std::uint64_t seed = run_seed(base_seed, inst_index, alg_id, n_sol, run);
        RunRecord rec = execute_run(inst, alg, n_sol, n_gen, mode, seed);
        rec.run_index = run;
        sink << record_to_json_line(rec) << '\n';
    }
    std::cout << n_run << " runs -> " << file.string() << "\n";
    return 0;
}

int cmd_front(const std::string& results_dir, const std::string& out) {
    const auto records = load_records(results_dir);
    if (records.empty()) throw std::runtime_error("no records under " + results_dir);
    std::map<std::string, std::vector<Archive>> pools;
    for (const RunRecord& rec : records) pools[rec.instance_name].push_back(rec.archive);
    if (pools.size() == 1) {
        const ReferenceFront front = build_simulated_front(pools.begin()->second);
        save_front(front, out);
        std::cout << "front: " << out << " (" << front.points.size() << " points)\n";
        return 0;
    }
    for (const auto& [name, archives] : pools) {
        const fs::path p = per_instance_front(out, name);
        const ReferenceFront front = build_simulated_front(archives);
        save_front(front, p);
        std::cout << "front: " << p.string() << " (" << front.points.size() << " points)\n";
    }
    return 0;
}

int cmd_score(const std::string& results_dir, const std::string& front_path,
              const std::string& out) {
    const auto records = load_records(results_dir);
    if (records.empty()) throw std::runtime_error("no records under " + results_dir);
    FrontPolicy policy;
    if (!front_path.empty()) {
        std::set<std::string> instances;
        for (const RunRecord& rec : records) instances.insert(rec.instance_name);
        policy.external = load_fronts(front_path, instances);
    }
    const auto rows = score_and_summarize(records, policy);
    std::ofstream sink(out, std::ios::trunc);
    if (!sink) throw std::runtime_error("cannot write " + out);
    sink << summary_to_csv(rows);
    std::cout << rows.size() << " summary rows -> " << out << "\n";
    return 0;
}

int cmd_table(const std::string& summary_path) {
    std::ifstream in(summary_path);
    if (!in) throw std::runtime_error("cannot read " + summary_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto rows = summary_from_csv(text);

    std::map<std::pair<std::string, int>, std::vector<const SummaryRow*>> groups;
    for (const SummaryRow& row : rows) groups[{row.instance, row.n_sol}].push_back(&row);

    for (const auto& [key, group] : groups) {
        std::printf("instance %s, N_sol = %d  (best per column marked *)\n", key.first.c_str(),
                    key.second);
        std::printf("%-5s", "Alg");
        for (const char* name : kMetricNames)
            std::printf(" %12s %12s", ("Avg(" + std::string(name) + ")").c_str(),
                        ("Std(" + std::string(name) + ")").c_str());
        std::printf("\n");
        for (const SummaryRow* row : group) {
            std::printf("%-5d", row->alg_id);
            for (std::size_t m = 0; m < kNumMetrics; ++m)
                std::printf(" %12s %12s", cell_label(row->avg[m], row->is_best[m]).c_str(),
                            cell_label(row->stddev[m], false).c_str());
            std::printf("\n");
        }
        std::printf("\n");
    }
    return 0;
}

int cmd_plot(const std::string& summary_path, const std::string& out_dir,
             const std::string& results_dir, const std::string& front_path) {
    std::ifstream in(summary_path);
    if (!in) throw std::runtime_error("cannot read " + summary_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto rows = summary_from_csv(text);
    fs::create_directories(out_dir);

    std::map<std::pair<std::string, int>, std::vector<const SummaryRow*>> groups;
    for (const SummaryRow& row : rows) groups[{row.instance, row.n_sol}].push_back(&row);

    std::vector<RunRecord> records;
    std::map<std::string, ReferenceFront> fronts;
    if (!results_dir.empty()) {
        records = load_records(results_dir);
        std::set<std::string> instances;
        for (const RunRecord& rec : records) instances.insert(rec.instance_name);
        if (!front_path.empty()) {
            fronts = load_fronts(front_path, instances);
        } else {
            std::map<std::string, std::vector<Archive>> pools;
            for (const RunRecord& rec : records) pools[rec.instance_name].push_back(rec.archive);
            for (const auto& [name, archives] : pools)
                fronts.emplace(name, build_simulated_front(archives));
        }
    }

    for (const auto& [key, group] : groups) {
        const auto& [instance, n_sol] = key;
        std::vector<psched_cli::Series> series;
        if (!records.empty()) {
            const auto front_it = fronts.find(instance);
            if (front_it != fronts.end()) {
                psched_cli::Series line{"front", "#000000", true, {}};
                for (const ObjectivePoint& p : front_it->second.points)
                    line.points.emplace_back(p.energy, p.makespan);
                series.push_back(std::move(line));
            }
            std::map<int, std::vector<std::pair<double, double>>> by_alg;
            for (const RunRecord& rec : records) {
                if (rec.instance_name != instance || rec.n_sol != n_sol) continue;
                for (const ArchiveEntry& e : rec.archive.entries)
                    by_alg[rec.alg_id].emplace_back(e.point.energy, e.point.makespan);
            }
            for (auto& [alg, pts] : by_alg) {
                // keep the SVG small: stride-sample dense clouds
                const std::size_t cap = 1000;
                if (pts.size() > cap) {
                    std::vector<std::pair<double, double>> thin;
                    const std::size_t stride = (pts.size() + cap - 1) / cap;
                    for (std::size_t i = 0; i < pts.size(); i += stride) thin.push_back(pts[i]);
                    pts = std::move(thin);
                }
                series.push_back(psched_cli::Series{"alg " + std::to_string(alg),
                                                    psched_cli::algorithm_color(alg), false,
                                                    std::move(pts)});
            }
        } else {
            for (const SummaryRow* row : group) {
                series.push_back(psched_cli::Series{
                    "alg " + std::to_string(row->alg_id), psched_cli::algorithm_color(row->alg_id),
                    false,
                    {{row->avg[static_cast<std::size_t>(Metric::fe)],
                      row->avg[static_cast<std::size_t>(Metric::fm)]}}});
            }
        }
        const std::string title = instance + ", N_sol = " + std::to_string(n_sol);
        const fs::path file =
            fs::path(out_dir) /
            (sanitize_name(instance) + "__nsol" + std::to_string(n_sol) + ".svg");
        std::ofstream sink(file, std::ios::trunc);
        if (!sink) throw std::runtime_error("cannot write " + file.string());
        sink << psched_cli::render_scatter_svg(title, "energy (KW x time)", "makespan (time)",
                                               series);
        std::cout << "plot: " << file.string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bi-objective cloud task scheduling testbed"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a benchmark instance");
    int tasks = 20, cpus = 5;
    double deadline = 30.0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--tasks", tasks, "number of tasks");
    gen->add_option("--cpus", cpus, "number of processors");
    gen->add_option("--deadline", deadline, "makespan deadline");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output instance JSON")->required();

    // run
    auto* run = app.add_subcommand("run", "execute an experiment plan or a single cell");
    std::string plan_path, instance_path, run_out = "results", mode_name = "feasibility_first";
    int alg_id = -1, n_sol = 50, n_gen = 200, n_run = 1, workers = 0;
    std::uint64_t run_base_seed = 0;
    std::size_t inst_index = 0;
    run->add_option("--plan", plan_path, "experiment plan JSON");
    run->add_option("--alg", alg_id, "algorithm id 0..11 (single-cell mode)");
    run->add_option("--instance", instance_path, "instance JSON (single-cell mode)");
    run->add_option("--nsol", n_sol, "population size");
    run->add_option("--ngen", n_gen, "generation count");
    run->add_option("--nrun", n_run, "repetitions of the cell");
    run->add_option("--seed", run_base_seed, "base seed");
    run->add_option("--inst-index", inst_index,
                    "instance position in the original plan (seeding)");
    run->add_option("--mode", mode_name, "ignore | feasibility_first");
    run->add_option("--workers", workers, "worker threads (0 = auto)");
    run->add_option("--out", run_out, "results directory");

    // front
    auto* front = app.add_subcommand("front", "pool final archives into a reference front");
    std::string front_results = "results", front_out = "front.csv";
    front->add_option("--results", front_results, "results directory");
    front->add_option("--out", front_out, "front CSV");

    // score
    auto* score = app.add_subcommand("score", "score records and emit the summary table");
    std::string score_results = "results", score_front, score_out = "summary.csv";
    score->add_option("--results", score_results, "results directory");
    score->add_option("--front", score_front, "frozen front CSV (default: pool from results)");
    score->add_option("--out", score_out, "summary CSV");

    // table
    auto* table = app.add_subcommand("table", "render a summary CSV as a table");
    std::string table_summary = "summary.csv";
    table->add_option("--summary", table_summary, "summary CSV");

    // plot
    auto* plot = app.add_subcommand("plot", "objective-space scatter SVGs");
    std::string plot_summary = "summary.csv", plot_out = "plots", plot_results, plot_front;
    plot->add_option("--summary", plot_summary, "summary CSV");
    plot->add_option("--out", plot_out, "output directory");
    plot->add_option("--results", plot_results, "results directory (archive scatter)");
    plot->add_option("--front", plot_front, "front CSV (drawn as a line)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(tasks, cpus, deadline, gen_seed, gen_out);
        if (run->parsed()) {
            if (!plan_path.empty()) return cmd_run_plan(plan_path, run_out, workers);
            if (alg_id < 0 || instance_path.empty())
                throw std::runtime_error("run needs either --plan or both --alg and --instance");
            return cmd_run_cell(alg_id, instance_path, n_sol, n_gen, n_run, run_base_seed,
                                inst_index, mode_name, run_out);
        }
        if (front->parsed()) return cmd_front(front_results, front_out);
        if (score->parsed()) return cmd_score(score_results, score_front, score_out);
        if (table->parsed()) return cmd_table(table_summary);
        if (plot->parsed()) return cmd_plot(plot_summary, plot_out, plot_results, plot_front);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
