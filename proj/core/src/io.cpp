#include "psched/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "psched/benchgen.hpp"

namespace psched {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << text;
    if (!out) throw std::runtime_error("write to " + file.string() + " failed");
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(line.substr(start));
            return parts;
        }
        parts.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<std::string> non_empty_lines(const std::string& text) {
    std::vector<std::string> lines;
    for (std::string& line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

std::string join_one_based(const Schedule& sched) {
    std::string out;
    for (int p : sched.to_one_based()) {
        if (!out.empty()) out += ';';
        out += std::to_string(p);
    }
    return out;
}

Schedule schedule_from_joined(const std::string& text) {
    std::vector<int> assignment;
    for (const std::string& part : split(text, ';')) {
        int value = 0;
        const auto res = std::from_chars(part.data(), part.data() + part.size(), value);
        if (res.ec != std::errc{} || res.ptr != part.data() + part.size())
            throw std::runtime_error("bad assignment entry '" + part + "'");
        assignment.push_back(value);
    }
    return Schedule::from_one_based(assignment);
}

bool parse_bool(const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw std::runtime_error("expected true/false, got '" + text + "'");
}

ProblemInstance instance_from(const json& j) {
    if (!j.is_object() || !j.contains("name") || !j.contains("deadline") ||
        !j.contains("tasks") || !j.contains("cpus"))
        throw std::runtime_error("instance JSON needs name, deadline, tasks, cpus");
    ProblemInstance inst;
    inst.name = j.at("name").get<std::string>();
    inst.deadline = j.at("deadline").get<double>();
    for (const json& t : j.at("tasks")) inst.task_sizes.push_back(t.get<double>());
    for (const json& c : j.at("cpus")) {
        inst.cpu_speeds.push_back(c.at("speed").get<double>());
        inst.cpu_energies.push_back(c.at("energy").get<double>());
    }
    validate_instance(inst);
    return inst;
}

} // namespace

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::runtime_error("bad number '" + text + "'");
    return value;
}

std::string to_string(ConstraintMode mode) {
    return mode == ConstraintMode::ignore ? "ignore" : "feasibility_first";
}

ConstraintMode constraint_mode_from_string(const std::string& name) {
    if (name == "ignore") return ConstraintMode::ignore;
    if (name == "feasibility_first") return ConstraintMode::feasibility_first;
    throw std::runtime_error("unknown constraint mode '" + name + "'");
}

std::string instance_to_json(const ProblemInstance& inst) {
    ordered_json j;
    j["name"] = inst.name;
    j["deadline"] = inst.deadline;
    j["tasks"] = inst.task_sizes;
    j["cpus"] = ordered_json::array();
    for (std::size_t c = 0; c < inst.cpu_speeds.size(); ++c) {
        ordered_json cpu;
        cpu["speed"] = inst.cpu_speeds[c];
        cpu["energy"] = inst.cpu_energies[c];
        j["cpus"].push_back(std::move(cpu));
    }
    return j.dump();
}

ProblemInstance instance_from_json(const std::string& text) {
    return instance_from(json::parse(text));
}

ProblemInstance load_instance(const std::filesystem::path& file) {
    return instance_from_json(read_file(file));
}

void save_instance(const ProblemInstance& inst, const std::filesystem::path& file) {
    write_file(file, instance_to_json(inst) + "\n");
}

std::string archive_to_csv(const Archive& archive) {
    std::string out = "energy,makespan,feasible,assignment\n";
    for (const ArchiveEntry& e : archive.entries) {
        out += format_double(e.point.energy);
        out += ',';
        out += format_double(e.point.makespan);
        out += ',';
        out += e.point.feasible ? "true" : "false";
        out += ',';
        out += join_one_based(e.schedule);
        out += '\n';
    }
    return out;
}

Archive archive_from_csv(const std::string& text, std::size_t capacity) {
    const auto lines = non_empty_lines(text);
    if (lines.empty() || lines.front() != "energy,makespan,feasible,assignment")
        throw std::runtime_error("archive CSV: bad header");
    Archive archive;
    archive.capacity = capacity;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto parts = split(lines[i], ',');
        if (parts.size() != 4) throw std::runtime_error("archive CSV: bad row");
        ArchiveEntry e;
        e.point.energy = parse_double(parts[0]);
        e.point.makespan = parse_double(parts[1]);
        e.point.feasible = parse_bool(parts[2]);
        e.schedule = schedule_from_joined(parts[3]);
        archive.entries.push_back(std::move(e));
    }
    if (archive.entries.size() > capacity)
        throw std::runtime_error("archive CSV: more rows than the capacity allows");
    return archive;
}

std::string front_to_csv(const ReferenceFront& front) {
    std::string out = "energy,makespan\n";
    for (const ObjectivePoint& p : front.points) {
        out += format_double(p.energy);
        out += ',';
        out += format_double(p.makespan);
        out += '\n';
    }
    return out;
}

ReferenceFront front_from_csv(const std::string& text) {
    const auto lines = non_empty_lines(text);
    if (lines.empty() || lines.front() != "energy,makespan")
        throw std::runtime_error("front CSV: bad header");
    ReferenceFront front;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto parts = split(lines[i], ',');
        if (parts.size() != 2) throw std::runtime_error("front CSV: bad row");
        front.points.push_back(
            ObjectivePoint{parse_double(parts[0]), parse_double(parts[1]), false});
    }
    if (front.points.empty()) throw std::runtime_error("front CSV: no points");
    for (std::size_t i = 0; i + 1 < front.points.size(); ++i) {
        const bool ordered = front.points[i].energy < front.points[i + 1].energy &&
                             front.points[i].makespan > front.points[i + 1].makespan;
        if (!ordered)
            throw std::runtime_error("front CSV: rows must be sorted and mutually nondominated");
    }
    return front;
}

ReferenceFront load_front(const std::filesystem::path& file) {
    return front_from_csv(read_file(file));
}

void save_front(const ReferenceFront& front, const std::filesystem::path& file) {
    write_file(file, front_to_csv(front));
}

std::string record_to_json_line(const RunRecord& rec) {
    ordered_json j;
    j["alg"] = rec.alg_id;
    j["instance"] = rec.instance_name;
    j["nsol"] = rec.n_sol;
    j["run"] = rec.run_index;
    j["seed"] = rec.seed;
    j["evals"] = rec.evaluation_count;
    j["wall_s"] = rec.wall_seconds;
    j["mean_fe"] = rec.mean_energy;
    j["mean_fm"] = rec.mean_makespan;
    j["ncap"] = rec.archive.capacity;
    ordered_json rows = ordered_json::array();
    for (const ArchiveEntry& e : rec.archive.entries)
        rows.push_back(ordered_json::array(
            {e.point.energy, e.point.makespan, e.point.feasible, join_one_based(e.schedule)}));
    j["archive"] = std::move(rows);
    return j.dump();
}

RunRecord record_from_json_line(const std::string& line) {
    const json j = json::parse(line);
    RunRecord rec;
    rec.alg_id = j.at("alg").get<int>();
    rec.instance_name = j.at("instance").get<std::string>();
    rec.n_sol = j.at("nsol").get<int>();
    rec.run_index = j.at("run").get<int>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.evaluation_count = j.at("evals").get<std::uint64_t>();
    rec.wall_seconds = j.at("wall_s").get<double>();
    rec.mean_energy = j.at("mean_fe").get<double>();
    rec.mean_makespan = j.at("mean_fm").get<double>();
    rec.archive.capacity = j.at("ncap").get<std::size_t>();
    for (const json& row : j.at("archive")) {
        if (!row.is_array() || row.size() != 4)
            throw std::runtime_error("record archive row must be [energy, makespan, feasible, assignment]");
        ArchiveEntry e;
        e.point.energy = row[0].get<double>();
        e.point.makespan = row[1].get<double>();
        e.point.feasible = row[2].get<bool>();
        e.schedule = schedule_from_joined(row[3].get<std::string>());
        rec.archive.entries.push_back(std::move(e));
    }
    return rec;
}

std::string sanitize_name(const std::string& name) {
    std::string safe = name;
    for (char& c : safe)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
    return safe;
}

std::filesystem::path cell_file(const std::filesystem::path& dir, const std::string& instance,
                                int alg_id, int n_sol) {
    return dir / (sanitize_name(instance) + "__alg" + std::to_string(alg_id) + "__nsol" +
                  std::to_string(n_sol) + ".jsonl");
}

std::vector<RunRecord> load_records(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("results directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<RunRecord> records;
    for (const auto& file : files)
        for (const std::string& line : non_empty_lines(read_file(file)))
            records.push_back(record_from_json_line(line));

    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.instance_name, a.alg_id, a.n_sol, a.run_index) <
               std::tie(b.instance_name, b.alg_id, b.n_sol, b.run_index);
    });
    return records;
}

ExperimentPlan plan_from_json(const std::string& text) {
    const json j = json::parse(text);
    for (const char* key : {"instances", "algorithms", "nsol", "ngen", "nrun", "seed"})
        if (!j.contains(key))
            throw std::runtime_error(std::string("plan JSON: missing key '") + key + "'");

    ExperimentPlan plan;
    for (const json& entry : j.at("instances")) {
        if (entry.contains("cpus") && entry.at("cpus").is_number()) {
            BenchmarkSpec spec;
            spec.n_tasks = entry.at("tasks").get<int>();
            spec.n_cpus = entry.at("cpus").get<int>();
            if (entry.contains("deadline")) spec.deadline = entry.at("deadline").get<double>();
            if (entry.contains("seed")) spec.seed = entry.at("seed").get<std::uint64_t>();
            plan.instances.push_back(generate(spec));
        } else {
            plan.instances.push_back(instance_from(entry));
        }
    }
    for (const json& entry : j.at("algorithms")) {
        AlgorithmSpec alg;
        if (entry.is_number_integer()) {
            alg.id = entry.get<int>();
        } else if (entry.is_object()) {
            alg.id = entry.at("id").get<int>();
            for (const auto& [key, value] : entry.items())
                if (key != "id") alg.overrides[key] = value.get<double>();
        } else {
            throw std::runtime_error("plan JSON: algorithm entries are ids or objects");
        }
        plan.algorithms.push_back(std::move(alg));
    }
    plan.n_sol_values = j.at("nsol").get<std::vector<int>>();
    plan.n_gen = j.at("ngen").get<int>();
    plan.n_run = j.at("nrun").get<int>();
    plan.base_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("constraint_mode"))
        plan.constraint_mode = constraint_mode_from_string(j.at("constraint_mode").get<std::string>());
    validate_plan(plan);
    return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& file) {
    return plan_from_json(read_file(file));
}

namespace {

std::string summary_header() {
    std::string header = "instance,n_sol,alg";
    for (const char* name : kMetricNames) {
        header += ",Avg(";
        header += name;
        header += "),Std(";
        header += name;
        header += ")";
    }
    return header;
}

} // namespace

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
    std::string out = summary_header() + "\n";
    for (const SummaryRow& row : rows) {
        if (row.instance.find_first_of(",\r\n") != std::string::npos)
            throw std::runtime_error("instance name '" + row.instance +
                                     "' cannot be written to CSV");
        out += row.instance;
        out += ',' + std::to_string(row.n_sol);
        out += ',' + std::to_string(row.alg_id);
        for (std::size_t m = 0; m < kNumMetrics; ++m) {
            out += ',' + format_double(row.avg[m]);
            out += ',' + format_double(row.stddev[m]);
        }
        out += '\n';
    }
    return out;
}

std::vector<SummaryRow> summary_from_csv(const std::string& text) {
    const auto lines = non_empty_lines(text);
    if (lines.empty() || lines.front() != summary_header())
        throw std::runtime_error("summary CSV: bad header");
    std::vector<SummaryRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto parts = split(lines[i], ',');
        if (parts.size() != 3 + 2 * kNumMetrics)
            throw std::runtime_error("summary CSV: bad row");
        SummaryRow row;
        row.instance = parts[0];
        row.n_sol = static_cast<int>(parse_double(parts[1]));
        row.alg_id = static_cast<int>(parse_double(parts[2]));
        for (std::size_t m = 0; m < kNumMetrics; ++m) {
            row.avg[m] = parse_double(parts[3 + 2 * m]);
            row.stddev[m] = parse_double(parts[4 + 2 * m]);
        }
        rows.push_back(std::move(row));
    }
    mark_best(rows);
    return rows;
}

} // namespace psched
