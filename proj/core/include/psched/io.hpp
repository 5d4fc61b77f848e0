#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "psched/harness.hpp"
#include "psched/metrics.hpp"
#include "psched/model.hpp"
#include "psched/pareto.hpp"
#include "psched/run_record.hpp"

namespace psched {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
double parse_double(const std::string& text);

std::string to_string(ConstraintMode mode);
ConstraintMode constraint_mode_from_string(const std::string& name);

// ProblemInstance JSON document, fields in this order:
// {"name", "deadline", "tasks":[sizes...], "cpus":[{"speed","energy"}...]}
std::string instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const std::string& text);
ProblemInstance load_instance(const std::filesystem::path& file);
void save_instance(const ProblemInstance& inst, const std::filesystem::path& file);

// Archive CSV: header then one `energy,makespan,feasible,assignment` row per
// entry, the assignment a ';'-joined list of 1-based processor indices.
std::string archive_to_csv(const Archive& archive);
Archive archive_from_csv(const std::string& text, std::size_t capacity);

// Reference front CSV: header then `energy,makespan` rows sorted by energy.
// Loading validates the front invariants (nonempty, sorted, nondominated).
std::string front_to_csv(const ReferenceFront& front);
ReferenceFront front_from_csv(const std::string& text);
ReferenceFront load_front(const std::filesystem::path& file);
void save_front(const ReferenceFront& front, const std::filesystem::path& file);

// One RunRecord as a single JSON line; archives embedded as
// [energy, makespan, feasible, "assignment"] rows.
std::string record_to_json_line(const RunRecord& rec);
RunRecord record_from_json_line(const std::string& line);

// Filesystem-safe form of an instance name.
std::string sanitize_name(const std::string& name);

// Results file of one (instance, algorithm, n_sol) cell.
std::filesystem::path cell_file(const std::filesystem::path& dir, const std::string& instance,
                                int alg_id, int n_sol);

// Every record in the *.jsonl files under `dir`, sorted by
// (instance, algorithm, n_sol, run index).
std::vector<RunRecord> load_records(const std::filesystem::path& dir);

// Experiment plan JSON:
// {"instances":[spec-or-inline...], "algorithms":[id-or-{id,...}...],
//  "nsol":[...], "ngen":N, "nrun":N, "seed":S, "constraint_mode":"..."}
// A spec entry {"tasks":T,"cpus":C,"deadline":D,"seed":S} is generated on
// load; an entry with a "cpus" array is taken as an inline instance.
ExperimentPlan plan_from_json(const std::string& text);
ExperimentPlan load_plan(const std::filesystem::path& file);

// Summary CSV with the fixed column sequence
// instance,n_sol,alg,Avg(N_n),Std(N_n),...,Avg(F_m),Std(F_m).
std::string summary_to_csv(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> summary_from_csv(const std::string& text);

} // namespace psched
