#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mineplanner/codegen.hpp"
#include "mineplanner/plan_io.hpp"
#include "mineplanner/suite.hpp"
#include "mineplanner/task_spec.hpp"

namespace mineplanner {

struct PlannerAdapter {
  std::string name;
  /// argv template. Placeholders: {domain} {problem} {plan_out} (all required) and {exe}.
  std::vector<std::string> command;
  std::string executable;  // substituted for {exe}; overridable by environment
  EncodingKind encoding = EncodingKind::Propositional;
  PlanDialect dialect = PlanDialect::FdSasPlan;
  /// Regexes over stdout+stderr whose first group is a duration.
  std::string preprocess_pattern;
  std::string search_pattern;
  double time_unit_seconds = 1.0;
  /// Exit codes that mean the preprocessing phase gave up.
  std::vector<int> preprocess_failure_codes;
};

/// Throws ConfigError when a required placeholder is missing or a pattern is invalid.
void validate_adapter(const PlannerAdapter& adapter);

/// Fast Downward (LAMA, propositional) and ENHSP-20 (numeric).
std::vector<PlannerAdapter> builtin_adapters();

/// `MINEPLANNER_<NAME>_PATH` with the name upper-cased and non-alphanumerics as `_`.
std::string adapter_env_var(std::string_view adapter_name);

/// Copy with {exe} resolved from the environment override or `executable`.
PlannerAdapter with_env_override(const PlannerAdapter& adapter);

PlannerAdapter adapter_from_json(const nlohmann::json& j);  // throws ConfigError
nlohmann::json adapter_to_json(const PlannerAdapter& adapter);
/// `{"planners": [...]}`; entries with a built-in name inherit its defaults.
std::vector<PlannerAdapter> load_adapters(const std::filesystem::path& config);

enum class Outcome { Solved, Timeout, PreprocessFailure, SearchFailure };
std::string_view to_string(Outcome o);

struct BenchRecord {
  std::string task_id;  // family/variant
  std::string planner;
  int repetition = 0;
  std::optional<double> preprocess_seconds;
  std::optional<double> search_seconds;
  double total_seconds = 0;
  double budget_seconds = 0;
  Outcome outcome = Outcome::SearchFailure;
  std::optional<std::size_t> plan_length;
  bool verified = false;
  bool phases_known = false;
  std::optional<long> peak_memory_kb;
  std::string detail;
};

nlohmann::json record_to_json(const BenchRecord& r);

/// What a planner's output is checked against.
struct VerificationTarget {
  const WorldState* world = nullptr;
  const GoalSpec* goal = nullptr;
};

/// Runs one planner invocation in a fresh work directory. A record is `solved` only
/// after its plan parses and replays to the goal in the simulator.
BenchRecord run_planner(const PlannerAdapter& adapter, const std::filesystem::path& domain,
                        const std::filesystem::path& problem, double timeout_seconds,
                        const VerificationTarget& target);

struct BenchTask {
  std::string id;  // family/variant
  TaskSpec spec;
  std::filesystem::path dir;  // holds the PDDL files, written on demand
};

/// Tasks listed by `<suite>/manifest.json`, or every `*/*/task.yaml` when absent.
std::vector<BenchTask> load_suite_tasks(const std::filesystem::path& suite_dir);

struct SuiteRunOptions {
  double timeout_seconds = 7200;
  int repetitions = 1;
  int workers = 1;
};

/// Records ordered by (task, planner, repetition) regardless of scheduling.
std::vector<BenchRecord> run_suite(const std::vector<PlannerAdapter>& adapters,
                                   const std::vector<BenchTask>& tasks, const SuiteRunOptions& options);

struct CellSummary {
  std::string task_id;
  std::string planner;
  std::size_t runs = 0;
  std::size_t solved = 0;
  std::string preprocess;
  std::string search;
  std::string total;
};

/// One cell per (task, planner) in first-seen order.
std::vector<CellSummary> summarize(const std::vector<BenchRecord>& records);

/// Table with per-planner preprocess/search/total columns and one row per task.
/// `---` marks preprocessing failures, `>B` timeouts at budget B seconds, and cells
/// with several runs show mean±sd.
std::string emit_report(const std::vector<BenchRecord>& records, TableFormat format);

struct ScalingRecord {
  ObservationRange range;
  std::size_t objects_prop = 0;
  std::size_t objects_num = 0;
  TaskStats stats;
  std::size_t problem_bytes_prop = 0;
  std::size_t problem_bytes_num = 0;
  std::size_t domain_bytes_prop = 0;
  std::size_t domain_bytes_num = 0;
  std::optional<BenchRecord> run;
};

/// Regenerates `base` at each range in turn. With an adapter, each step is also solved;
/// the sweep stops after the first preprocessing failure.
std::vector<ScalingRecord> scaling_experiment(const TaskSpec& base, const std::vector<ObservationRange>& steps,
                                              const PlannerAdapter* adapter = nullptr,
                                              double timeout_seconds = 7200);

/// Least-squares slope of log(y) over log(x).
double fit_power_exponent(const std::vector<double>& x, const std::vector<double>& y);

std::string emit_scaling_report(const std::vector<ScalingRecord>& records, TableFormat format);

}  // namespace mineplanner
