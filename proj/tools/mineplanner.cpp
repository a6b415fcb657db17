#include <pthread.h>
#include <signal.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mineplanner/bench.hpp"
#include "mineplanner/codegen.hpp"
#include "mineplanner/plan_io.hpp"
#include "mineplanner/search.hpp"
#include "mineplanner/simulator.hpp"
#include "mineplanner/suite.hpp"
#include "mineplanner/task_spec.hpp"
#include "mineplanner/world.hpp"
#ifdef MINEPLANNER_WITH_PLAY
#include "mineplanner/play_server.hpp"
#endif

namespace fs = std::filesystem;
using namespace mineplanner;

namespace {

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw NotFoundError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw ConfigError("cannot write " + p.string());
}

// "-" means stdout.
void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text(out, text);
  }
}

TableFormat table_format(const std::string& s) {
  const auto f = parse_table_format(s);
  if (!f) throw ConfigError("unknown format '" + s + "' (markdown, csv)");
  return *f;
}

std::vector<ObservationRange> parse_steps(const std::string& text) {
  std::vector<ObservationRange> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    int x = 0, y = 0, z = 0;
    char c1 = 0, c2 = 0;
    std::stringstream ts(tok);
    if (!(ts >> x >> c1 >> y >> c2 >> z) || c1 != ',' || c2 != ',')
      throw ConfigError("bad range '" + tok + "' (expected x,y,z;x,y,z;...)");
    out.push_back({x, y, z});
  }
  if (out.empty()) throw ConfigError("no ranges given");
  return out;
}

std::vector<PlannerAdapter> select_adapters(const std::vector<std::string>& names, const std::string& config) {
  std::vector<PlannerAdapter> pool = builtin_adapters();
  if (!config.empty())
    for (auto& a : load_adapters(config)) {
      const auto it = std::find_if(pool.begin(), pool.end(), [&](const auto& p) { return p.name == a.name; });
      if (it != pool.end()) {
        *it = a;
      } else {
        pool.push_back(a);
      }
    }
  std::vector<PlannerAdapter> out;
  for (const auto& n : names) {
    const auto it = std::find_if(pool.begin(), pool.end(), [&](const auto& p) { return p.name == n; });
    if (it == pool.end()) throw ConfigError("unknown planner '" + n + "'");
    out.push_back(with_env_override(*it));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voxel-world planning tasks: compile to PDDL, simulate, solve and benchmark."};
  app.require_subcommand(1);
  int exit_code = 0;

  // validate
  auto* validate = app.add_subcommand("validate", "Check a task file against the world rules");
  std::string v_task;
  validate->add_option("task", v_task, "Task YAML")->required();
  validate->callback([&] {
    const auto report = validate_task(load_task(v_task));
    std::cout << (report.valid() ? "valid\n" : report.str() + "\n");
    exit_code = report.valid() ? 0 : 1;
  });

  // stats
  auto* stats = app.add_subcommand("stats", "Print object and predicate counts for a task");
  std::string s_task;
  stats->add_option("task", s_task, "Task YAML")->required();
  stats->callback([&] {
    const auto spec = load_task(s_task);
    const auto st = world_stats(build_initial_world(spec), spec.goal);
    nlohmann::json j = {{"initial_objects", st.initial_objects},
                        {"init_predicates_prop", st.init_predicates_prop},
                        {"init_predicates_num", st.init_predicates_num},
                        {"goal_predicates", st.goal_predicates}};
    std::cout << j.dump(2) << "\n";
  });

  // compile
  auto* compile = app.add_subcommand("compile", "Write numeric and propositional PDDL for a task");
  std::string c_task, c_out = ".", c_stem;
  compile->add_option("task", c_task, "Task YAML")->required();
  compile->add_option("-o,--out", c_out, "Output directory");
  compile->add_option("--stem", c_stem, "File stem (default: task name)");
  compile->callback([&] {
    const auto spec = load_task(c_task);
    const auto report = validate_task(spec);
    if (!report.valid()) throw SchemaError(report.str());
    const auto files = write_pddl_files(c_out, c_stem.empty() ? (spec.name.empty() ? "task" : spec.name) : c_stem,
                                        build_initial_world(spec), spec.goal);
    for (const auto& p : {files.numeric_domain, files.numeric_problem, files.prop_domain, files.prop_problem})
      std::cout << p.string() << "\n";
  });

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Replay a plan and check the goal");
  std::string m_task, m_plan, m_dialect = "canonical";
  bool m_json = false;
  simulate->add_option("task", m_task, "Task YAML")->required();
  simulate->add_option("plan", m_plan, "Plan file")->required();
  simulate->add_option("-d,--dialect", m_dialect, "canonical, fd or enhsp");
  simulate->add_flag("--json", m_json, "Print the result as JSON");
  simulate->callback([&] {
    const auto spec = load_task(m_task);
    const auto dialect = parse_dialect(m_dialect);
    if (!dialect) throw ConfigError("unknown dialect '" + m_dialect + "'");
    const auto plan = parse_plan(read_text(m_plan), *dialect);
    const auto world = build_initial_world(spec);
    const auto v = run_plan(world, plan.actions, spec.goal);
    if (m_json) {
      nlohmann::json j = {{"plan_length", v.plan_length},
                          {"goal_satisfied", v.goal_satisfied},
                          {"verified", v.verified()},
                          {"final_digest", v.final_digest}};
      j["failing_step"] = v.failing_step ? nlohmann::json(*v.failing_step) : nlohmann::json(nullptr);
      j["failure_reason"] = v.failure_reason;
      std::cout << j.dump(2) << "\n";
    } else if (v.failing_step) {
      std::cout << "rejected at step " << *v.failing_step << ": " << v.failure_reason << "\n";
    } else {
      std::cout << "steps: " << v.plan_length << "\ngoal satisfied: " << (v.goal_satisfied ? "yes" : "no") << "\n";
    }
    exit_code = v.verified() ? 0 : 1;
  });

  // solve
  auto* solve = app.add_subcommand("solve", "Find a shortest plan with the built-in search");
  std::string o_task, o_out;
  SearchLimits limits;
  bool o_bfs = false;
  solve->add_option("task", o_task, "Task YAML")->required();
  solve->add_option("-o,--out", o_out, "Plan file (default: stdout)");
  solve->add_option("--max-expanded", limits.max_expanded, "Expansion limit");
  solve->add_option("--max-depth", limits.max_depth, "Depth limit");
  solve->add_option("--seconds", limits.wall_seconds, "Wall-clock limit");
  solve->add_flag("--bfs", o_bfs, "Plain breadth-first order (no lower bound)");
  solve->callback([&] {
    const auto spec = load_task(o_task);
    limits.use_heuristic = !o_bfs;
    const auto r = bfs_solve(build_initial_world(spec), spec.goal, limits);
    if (!r.solved()) {
      std::cerr << to_string(r.status) << ": " << r.detail << " (expanded " << r.expanded << ")\n";
      exit_code = 2;
      return;
    }
    Plan plan;
    plan.actions = r.plan;
    plan.comments.push_back("length " + std::to_string(r.plan.size()) + ", expanded " + std::to_string(r.expanded));
    emit(o_out, serialize_plan(plan));
  });

  // suite
  auto* suite = app.add_subcommand("suite", "Generate the 45-task suite");
  std::string u_out = "suite", u_scale = "desk", u_format = "markdown";
  std::uint64_t u_seed = 1;
  bool u_no_solve = false, u_no_pddl = false;
  suite->add_option("-o,--out", u_out, "Output directory");
  suite->add_option("--seed", u_seed, "Generator seed");
  suite->add_option("--scale", u_scale, "desk or full");
  suite->add_option("--format", u_format, "Table format printed to stdout: markdown or csv");
  suite->add_flag("--no-solve", u_no_solve, "Skip oracle solutions for Easy tasks");
  suite->add_flag("--no-pddl", u_no_pddl, "Only write task files");
  suite->callback([&] {
    const auto scale = parse_scale(u_scale);
    if (!scale) throw ConfigError("unknown scale '" + u_scale + "'");
    SuiteOptions opts;
    opts.solve_easy = !u_no_solve;
    opts.write_pddl = !u_no_pddl;
    const auto manifest = generate_suite(u_out, u_seed, *scale, opts);
    std::cout << manifest_table(manifest, table_format(u_format));
  });

  // bench
  auto* bench = app.add_subcommand("bench", "Run external planners over a suite");
  std::string b_suite = "suite", b_out, b_config, b_format = "markdown", b_records;
  std::vector<std::string> b_planners;
  SuiteRunOptions b_opts;
  bench->add_option("--suite", b_suite, "Suite directory");
  bench->add_option("--planner", b_planners, "Planner name (repeatable)")->required();
  bench->add_option("--timeout", b_opts.timeout_seconds, "Seconds per run");
  bench->add_option("--reps", b_opts.repetitions, "Repetitions per task");
  bench->add_option("--workers", b_opts.workers, "Parallel runs");
  bench->add_option("--config", b_config, "Planner adapter JSON");
  bench->add_option("-o,--out", b_out, "Report file (default: stdout)");
  bench->add_option("--format", b_format, "markdown or csv");
  bench->add_option("--records", b_records, "Also write raw records as JSON");
  bench->callback([&] {
    const auto adapters = select_adapters(b_planners, b_config);
    const auto tasks = load_suite_tasks(b_suite);
    const auto records = run_suite(adapters, tasks, b_opts);
    if (!b_records.empty()) {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& r : records) j.push_back(record_to_json(r));
      write_text(b_records, j.dump(2) + "\n");
    }
    emit(b_out, emit_report(records, table_format(b_format)));
  });

  // scale
  auto* scale = app.add_subcommand("scale", "Grow a task's observation range and record sizes");
  std::string a_task, a_family = "move", a_steps = "13,9,13;21,9,21;29,9,29;37,9,37", a_planner, a_config,
                      a_out, a_format = "markdown";
  double a_timeout = 7200;
  scale->add_option("--task", a_task, "Base task YAML (default: the family's Easy task)");
  scale->add_option("--family", a_family, "Suite family for the base task");
  scale->add_option("--steps", a_steps, "Ranges as x,y,z;x,y,z;...");
  scale->add_option("--planner", a_planner, "Also run this planner at each step");
  scale->add_option("--config", a_config, "Planner adapter JSON");
  scale->add_option("--timeout", a_timeout, "Seconds per planner run");
  scale->add_option("-o,--out", a_out, "Report file (default: stdout)");
  scale->add_option("--format", a_format, "markdown or csv");
  scale->callback([&] {
    const TaskSpec base = a_task.empty() ? generate_task(a_family, Difficulty::Easy, SuiteScale::Desk, 1) : load_task(a_task);
    std::optional<PlannerAdapter> adapter;
    if (!a_planner.empty()) adapter = select_adapters({a_planner}, a_config).front();
    const auto records = scaling_experiment(base, parse_steps(a_steps), adapter ? &*adapter : nullptr, a_timeout);
    std::string text = emit_scaling_report(records, table_format(a_format));
    if (records.size() >= 2) {
      std::vector<double> side, bytes;
      for (const auto& r : records) {
        side.push_back(r.range.x);
        bytes.push_back(static_cast<double>(r.problem_bytes_prop));
      }
      std::ostringstream os;
      os << "\nproblem bytes (propositional) ~ side^" << fit_power_exponent(side, bytes) << "\n";
      text += os.str();
    }
    emit(a_out, text);
  });

  // play
  auto* play = app.add_subcommand("play", "Serve a task for interactive play");
  std::string p_task, p_address = "127.0.0.1", p_static;
  unsigned short p_port = 8080;
  play->add_option("--task", p_task, "Task YAML to open a first session with");
  play->add_option("--port", p_port, "TCP port");
  play->add_option("--address", p_address, "Bind address");
  play->add_option("--static", p_static, "Directory of UI files to serve");
  play->callback([&] {
#ifdef MINEPLANNER_WITH_PLAY
    SessionStore store;
    PlayServerOptions opts;
    opts.address = p_address;
    opts.port = p_port;
    if (!p_static.empty()) opts.static_dir = fs::path(p_static);
    PlayServer server(store, opts);
    if (!p_task.empty()) {
      const auto started = store.start_from_yaml(read_text(p_task));
      std::cout << "session " << started.id << "  ws://" << p_address << ":" << server.port() << "/session/"
                << started.id << "\n";
    }
    std::cout << "listening on http://" << p_address << ":" << server.port() << std::endl;
    // Block before starting so every server thread inherits the mask.
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
    server.start();
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
#else
    throw ConfigError("built without the play server");
#endif
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const TaskRejected& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const mineplanner::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
