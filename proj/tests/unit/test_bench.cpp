#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "mineplanner/bench.hpp"
#include "mineplanner/error.hpp"
#include "mineplanner/search.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace mineplanner;

namespace {

PlannerAdapter stub(const std::string& name, const fs::path& script) {
  PlannerAdapter a;
  a.name = name;
  a.command = {script.string(), "{domain}", "{problem}", "{plan_out}"};
  a.encoding = EncodingKind::Numeric;
  a.dialect = PlanDialect::FdSasPlan;
  a.preprocess_pattern = R"(Done! \[([0-9.]+)s CPU)";
  a.search_pattern = R"(Search time: ([0-9.]+)s)";
  a.preprocess_failure_codes = {30};
  return a;
}

struct Corridor {
  TaskSpec spec = [] {
    auto t = mptest::flat_task({9, 5, 9});
    t.goal.agent_at = Position{0, 4, -3};
    return t;
  }();
  WorldState world = build_initial_world(spec);
  mptest::TempDir dir;
  EmittedFiles files = write_pddl_files(dir.path(), "corridor", world, spec.goal);
  VerificationTarget target() const { return {&world, &spec.goal}; }
};

BenchRecord rec(const std::string& task, const std::string& planner, Outcome o, double pre, double search,
                double total, double budget = 7200) {
  BenchRecord r;
  r.task_id = task;
  r.planner = planner;
  r.outcome = o;
  r.preprocess_seconds = pre;
  r.search_seconds = search;
  r.total_seconds = total;
  r.budget_seconds = budget;
  return r;
}

}  // namespace

TEST(Adapters, Builtins) {
  const auto b = builtin_adapters();
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].name, "fd");
  EXPECT_EQ(b[0].encoding, EncodingKind::Propositional);
  EXPECT_EQ(b[1].name, "enhsp");
  EXPECT_EQ(b[1].encoding, EncodingKind::Numeric);
  for (const auto& a : b) EXPECT_NO_THROW(validate_adapter(a));
  EXPECT_EQ(adapter_env_var("fd"), "MINEPLANNER_FD_PATH");
  EXPECT_EQ(adapter_env_var("enhsp-20"), "MINEPLANNER_ENHSP_20_PATH");
}

TEST(Adapters, Validation) {
  auto a = stub("s", "/bin/true");
  a.command = {"/bin/true", "{domain}", "{problem}"};
  EXPECT_THROW(validate_adapter(a), ConfigError);
  a = stub("s", "/bin/true");
  a.search_pattern = "([";
  EXPECT_THROW(validate_adapter(a), ConfigError);
}

TEST(Adapters, EnvironmentOverride) {
  ::setenv("MINEPLANNER_FD_PATH", "/opt/fd/fast-downward.py", 1);
  EXPECT_EQ(with_env_override(builtin_adapters()[0]).executable, "/opt/fd/fast-downward.py");
  ::unsetenv("MINEPLANNER_FD_PATH");
  EXPECT_EQ(with_env_override(builtin_adapters()[0]).executable, builtin_adapters()[0].executable);
}

TEST(Adapters, ConfigFile) {
  mptest::TempDir dir;
  const auto cfg = dir.path() / "planners.json";
  mptest::write_file(cfg, R"({"planners": [
    {"name": "fd", "executable": "/x/fd.py"},
    {"name": "mine", "command": ["/bin/true", "{domain}", "{problem}", "{plan_out}"], "encoding": "numeric",
     "dialect": "enhsp"}]})");
  const auto a = load_adapters(cfg);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].executable, "/x/fd.py");
  EXPECT_EQ(a[0].preprocess_pattern, builtin_adapters()[0].preprocess_pattern);
  EXPECT_EQ(a[1].dialect, PlanDialect::Enhsp);
  EXPECT_EQ(adapter_from_json(adapter_to_json(a[1])).command, a[1].command);
  mptest::write_file(cfg, R"({"planners": [{"name": "bad", "command": ["x"]}]})");
  EXPECT_THROW(load_adapters(cfg), ConfigError);
}

TEST(RunPlanner, TimeoutIsEnforced) {
  Corridor c;
  const auto s = mptest::write_script(c.dir.path(), "sleeper", "sleep 2\n");
  const auto r = run_planner(stub("sleeper", s), c.files.numeric_domain, c.files.numeric_problem, 1.0, c.target());
  EXPECT_EQ(r.outcome, Outcome::Timeout);
  EXPECT_GE(r.total_seconds, 1.0);
  EXPECT_LE(r.total_seconds, 1.25);
  EXPECT_FALSE(r.verified);
}

TEST(RunPlanner, ValidPlanIsSolved) {
  Corridor c;
  const auto plan = bfs_solve(c.world, c.spec.goal);
  ASSERT_TRUE(plan.solved());
  Plan p;
  p.actions = plan.plan;
  p.actions.push_back(Action::checkgoal());
  mptest::write_file(c.dir.path() / "good.plan", serialize_plan(p) + "; cost = 4 (unit cost)\n");
  const auto s = mptest::write_script(c.dir.path(), "copier",
                                      "echo 'Done! [0.25s CPU, 0.30s wall-clock]'\n"
                                      "echo 'Search time: 0.75s'\n"
                                      "cp '" + (c.dir.path() / "good.plan").string() + "' \"$3\"\n");
  const auto r = run_planner(stub("copier", s), c.files.numeric_domain, c.files.numeric_problem, 10, c.target());
  EXPECT_EQ(r.outcome, Outcome::Solved) << r.detail;
  EXPECT_TRUE(r.verified);
  EXPECT_EQ(r.plan_length, 3u);
  EXPECT_TRUE(r.phases_known);
  EXPECT_DOUBLE_EQ(*r.preprocess_seconds, 0.25);
  EXPECT_DOUBLE_EQ(*r.search_seconds, 0.75);
}

TEST(RunPlanner, NumberedPlanFilesTakeTheLast) {
  Corridor c;
  const auto s = mptest::write_script(c.dir.path(), "anytime",
                                      "printf '(move-south ag0)\\n' > \"$3.1\"\n"
                                      "printf '(move-north ag0)\\n(move-north ag0)\\n(move-north ag0)\\n' > \"$3.2\"\n");
  const auto r = run_planner(stub("anytime", s), c.files.numeric_domain, c.files.numeric_problem, 10, c.target());
  EXPECT_EQ(r.outcome, Outcome::Solved) << r.detail;
  EXPECT_FALSE(r.phases_known);
}

TEST(RunPlanner, InvalidPlanIsASearchFailure) {
  Corridor c;
  const auto s = mptest::write_script(c.dir.path(), "liar",
                                      "echo 'Done! [0.1s CPU'\n"
                                      "printf '(move-south ag0)\\n(checkgoal ag0)\\n' > \"$3\"\n");
  const auto r = run_planner(stub("liar", s), c.files.numeric_domain, c.files.numeric_problem, 10, c.target());
  EXPECT_EQ(r.outcome, Outcome::SearchFailure);
  EXPECT_FALSE(r.verified);
  EXPECT_NE(r.detail.find("goal-unmet"), std::string::npos) << r.detail;
}

TEST(RunPlanner, GarbagePlanIsASearchFailure) {
  Corridor c;
  const auto s = mptest::write_script(c.dir.path(), "garbage", "echo 'Done! [0.1s CPU'\necho 'nonsense' > \"$3\"\n");
  const auto r = run_planner(stub("garbage", s), c.files.numeric_domain, c.files.numeric_problem, 10, c.target());
  EXPECT_EQ(r.outcome, Outcome::SearchFailure);
}

TEST(RunPlanner, PreprocessFailures) {
  Corridor c;
  const auto code = mptest::write_script(c.dir.path(), "oom", "exit 30\n");
  auto r = run_planner(stub("oom", code), c.files.numeric_domain, c.files.numeric_problem, 10, c.target());
  EXPECT_EQ(r.outcome, Outcome::PreprocessFailure);
  const auto silent = mptest::write_script(c.dir.path(), "silent", "exit 1\n");
  r = run_planner(stub("silent", silent), c.files.numeric_domain, c.files.numeric_problem, 10, c.target());
  EXPECT_EQ(r.outcome, Outcome::PreprocessFailure);
  const auto searched = mptest::write_script(c.dir.path(), "gaveup", "echo 'Done! [0.1s CPU'\nexit 12\n");
  r = run_planner(stub("gaveup", searched), c.files.numeric_domain, c.files.numeric_problem, 10, c.target());
  EXPECT_EQ(r.outcome, Outcome::SearchFailure);
}

TEST(RunPlanner, MissingExecutable) {
  Corridor c;
  EXPECT_THROW(run_planner(stub("ghost", "/nonexistent/planner"), c.files.numeric_domain,
                           c.files.numeric_problem, 10, c.target()),
               ConfigError);
}

TEST(Report, Notation) {
  std::vector<BenchRecord> rs;
  rs.push_back(rec("move/easy", "fd", Outcome::PreprocessFailure, 1, 0, 1));
  rs.push_back(rec("move/easy", "enhsp", Outcome::Timeout, 2, 0, 7200));
  rs.push_back(rec("climb/hard", "fd", Outcome::Solved, 1.0, 2.0, 3.0));
  rs.push_back(rec("climb/hard", "fd", Outcome::Solved, 2.0, 4.0, 6.0));
  rs.push_back(rec("climb/hard", "fd", Outcome::Solved, 3.0, 6.0, 9.0));
  rs.push_back(rec("climb/hard", "enhsp", Outcome::SearchFailure, 0.5, 1, 1.5));
  const auto md = emit_report(rs, TableFormat::Markdown);
  const std::string expected =
      "| task | variant | fd preprocess | fd search | fd total | enhsp preprocess | enhsp search | enhsp total |\n"
      "|---|---|---:|---:|---:|---:|---:|---:|\n"
      "| move | easy | --- | --- | --- | 2.000 | >7200 | >7200 |\n"
      "| climb | hard | 2.000±1.000 | 4.000±2.000 | 6.000±3.000 | 0.500 | fail | fail |\n";
  EXPECT_EQ(md, expected);
  const auto csv = emit_report(rs, TableFormat::Csv);
  EXPECT_NE(csv.find("move,easy,---,---,---,2.000,>7200,>7200\n"), std::string::npos) << csv;
  EXPECT_EQ(emit_report(rs, TableFormat::Markdown), md);
}

TEST(Report, EmptyIsHeaderOnly) {
  EXPECT_EQ(emit_report({}, TableFormat::Markdown), "| task | variant |\n|---|---|\n");
  EXPECT_EQ(emit_report({}, TableFormat::Csv), "task,variant\n");
}

TEST(RunSuite, CountsAndCells) {
  mptest::TempDir dir;
  std::vector<BenchTask> tasks;
  for (int i = 0; i < 3; ++i) {
    BenchTask t;
    t.id = "flat/v" + std::to_string(i);
    t.spec = mptest::flat_task({3 + 2 * i, 5, 3});
    t.dir = dir.path() / ("t" + std::to_string(i));
    fs::create_directories(t.dir);
    tasks.push_back(std::move(t));
  }
  const auto a = mptest::write_script(dir.path(), "a", "echo 'Done! [0.1s CPU'\necho 'Search time: 0.2s'\n: > \"$3\"\n");
  const auto b = mptest::write_script(dir.path(), "b", "exit 30\n");
  SuiteRunOptions opt;
  opt.repetitions = 5;
  opt.workers = 3;
  opt.timeout_seconds = 10;
  const auto records = run_suite({stub("a", a), stub("b", b)}, tasks, opt);
  ASSERT_EQ(records.size(), 30u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].task_id, tasks[i / 10].id);
    EXPECT_EQ(records[i].planner, (i % 10) < 5 ? "a" : "b");
    EXPECT_EQ(records[i].repetition, static_cast<int>(i % 5));
  }
  const auto cells = summarize(records);
  ASSERT_EQ(cells.size(), 6u);
  for (const auto& c : cells) EXPECT_EQ(c.runs, 5u);
  // The empty plan verifies: each flat task's goal is the start cell.
  EXPECT_EQ(cells[0].solved, 5u);
  EXPECT_EQ(cells[0].preprocess, "0.100±0.000");
  EXPECT_EQ(cells[1].total, "---");
  EXPECT_TRUE(fs::exists(tasks[0].dir / "flat-numeric-domain.pddl"));
}

TEST(RunSuite, NoTasks) {
  EXPECT_TRUE(run_suite(builtin_adapters(), {}, {}).empty());
  EXPECT_THROW(run_suite({}, {}, SuiteRunOptions{1, 0, 1}), ConfigError);
}

TEST(Scaling, MonotoneAndSquareLaw) {
  auto base = mptest::flat_task({13, 9, 13});
  mptest::TempDir dir;
  const auto s = mptest::write_script(dir.path(), "noop", "echo 'Done! [0.1s CPU'\n");
  const auto a = stub("noop", s);
  const auto recs = scaling_experiment(base, {{13, 9, 13}, {17, 9, 17}, {21, 9, 21}}, &a, 10);
  ASSERT_EQ(recs.size(), 3u);
  for (std::size_t i = 1; i < recs.size(); ++i) {
    EXPECT_LT(recs[i - 1].stats.init_predicates_prop, recs[i].stats.init_predicates_prop);
    EXPECT_LT(recs[i - 1].stats.init_predicates_num, recs[i].stats.init_predicates_num);
    EXPECT_LT(recs[i - 1].problem_bytes_prop, recs[i].problem_bytes_prop);
    EXPECT_LT(recs[i - 1].objects_num, recs[i].objects_num);
  }
  for (const auto& r : recs) ASSERT_TRUE(r.run.has_value());
  EXPECT_EQ(scaling_experiment(base, {{13, 9, 13}}).size(), 1u);
  EXPECT_FALSE(scaling_experiment(base, {{13, 9, 13}}).front().run.has_value());
}

TEST(Scaling, StopsAtFirstPreprocessFailure) {
  auto base = mptest::flat_task({13, 9, 13});
  mptest::TempDir dir;
  const auto s = mptest::write_script(dir.path(), "oom", "exit 30\n");
  const auto a = stub("oom", s);
  const auto recs = scaling_experiment(base, {{13, 9, 13}, {17, 9, 17}}, &a, 10);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].run->outcome, Outcome::PreprocessFailure);
}

TEST(Scaling, ExponentFit) {
  EXPECT_NEAR(fit_power_exponent({1, 2, 4, 8}, {3, 12, 48, 192}), 2.0, 1e-9);
  EXPECT_NEAR(fit_power_exponent({2, 3, 5}, {2, 3, 5}), 1.0, 1e-9);
  std::vector<double> side, bytes;
  for (int n : {13, 21, 29, 37}) {
    const auto r = scaling_experiment(mptest::flat_task({n, 9, n}), {{n, 9, n}}).front();
    side.push_back(n);
    bytes.push_back(static_cast<double>(r.problem_bytes_prop));
  }
  EXPECT_GE(fit_power_exponent(side, bytes), 1.8);
}
