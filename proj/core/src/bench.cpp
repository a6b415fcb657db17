#include "mineplanner/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "mineplanner/error.hpp"
#include "mineplanner/simulator.hpp"
#include "mineplanner/subprocess.hpp"

namespace mineplanner {

namespace fs = std::filesystem;

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Solved: return "solved";
    case Outcome::Timeout: return "timeout";
    case Outcome::PreprocessFailure: return "preprocess-failure";
    case Outcome::SearchFailure: return "search-failure";
  }
  return "?";
}

void validate_adapter(const PlannerAdapter& adapter) {
  if (adapter.name.empty()) throw ConfigError("planner adapter without a name");
  if (adapter.command.empty()) throw ConfigError("planner '" + adapter.name + "': empty command");
  for (const char* ph : {"{domain}", "{problem}", "{plan_out}"}) {
    const bool found = std::any_of(adapter.command.begin(), adapter.command.end(),
                                   [&](const std::string& a) { return a.find(ph) != std::string::npos; });
    if (!found) throw ConfigError("planner '" + adapter.name + "': command lacks " + ph);
  }
  for (const auto* p : {&adapter.preprocess_pattern, &adapter.search_pattern}) {
    if (p->empty()) continue;
    try {
      std::regex re(*p);
      if (re.mark_count() < 1) throw ConfigError("planner '" + adapter.name + "': pattern needs a group: " + *p);
    } catch (const std::regex_error& e) {
      throw ConfigError("planner '" + adapter.name + "': bad pattern " + *p + ": " + e.what());
    }
  }
  if (!(adapter.time_unit_seconds > 0)) throw ConfigError("planner '" + adapter.name + "': time unit must be positive");
}

std::vector<PlannerAdapter> builtin_adapters() {
  PlannerAdapter fd;
  fd.name = "fd";
  fd.executable = "fast-downward.py";
  fd.command = {"{exe}", "--plan-file", "{plan_out}", "--alias", "lama-first", "{domain}", "{problem}"};
  fd.encoding = EncodingKind::Propositional;
  fd.dialect = PlanDialect::FdSasPlan;
  fd.preprocess_pattern = R"(Done! \[([0-9.eE+-]+)s CPU)";
  fd.search_pattern = R"(Search time: ([0-9.eE+-]+)s)";
  // Translator out of memory / time, critical and input errors.
  fd.preprocess_failure_codes = {20, 21, 30, 31};

  PlannerAdapter enhsp;
  enhsp.name = "enhsp";
  enhsp.executable = "enhsp";
  enhsp.command = {"{exe}", "-o", "{domain}", "-f", "{problem}", "-planner", "sat-hadd", "-sp", "{plan_out}"};
  enhsp.encoding = EncodingKind::Numeric;
  enhsp.dialect = PlanDialect::Enhsp;
  enhsp.preprocess_pattern = R"(Grounding Time:\s*([0-9.eE+-]+))";
  enhsp.search_pattern = R"(Search Time \(msec\):\s*([0-9.eE+-]+))";
  enhsp.time_unit_seconds = 0.001;
  return {fd, enhsp};
}

std::string adapter_env_var(std::string_view adapter_name) {
  std::string out = "MINEPLANNER_";
  for (char c : adapter_name)
    out += std::isalnum(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : '_';
  return out + "_PATH";
}

PlannerAdapter with_env_override(const PlannerAdapter& adapter) {
  PlannerAdapter out = adapter;
  if (const char* v = std::getenv(adapter_env_var(adapter.name).c_str()); v && *v) out.executable = v;
  return out;
}

PlannerAdapter adapter_from_json(const nlohmann::json& j) {
  PlannerAdapter a;
  try {
    a.name = j.at("name").get<std::string>();
    for (const auto& b : builtin_adapters())
      if (b.name == a.name) a = b;
    if (j.contains("command")) a.command = j.at("command").get<std::vector<std::string>>();
    if (j.contains("executable")) a.executable = j.at("executable").get<std::string>();
    if (j.contains("encoding")) {
      const auto e = parse_encoding(j.at("encoding").get<std::string>());
      if (!e) throw ConfigError("planner '" + a.name + "': unknown encoding");
      a.encoding = *e;
    }
    if (j.contains("dialect")) {
      const auto d = parse_dialect(j.at("dialect").get<std::string>());
      if (!d) throw ConfigError("planner '" + a.name + "': unknown plan dialect");
      a.dialect = *d;
    }
    if (j.contains("preprocess_pattern")) a.preprocess_pattern = j.at("preprocess_pattern").get<std::string>();
    if (j.contains("search_pattern")) a.search_pattern = j.at("search_pattern").get<std::string>();
    if (j.contains("time_unit_seconds")) a.time_unit_seconds = j.at("time_unit_seconds").get<double>();
    if (j.contains("preprocess_failure_codes"))
      a.preprocess_failure_codes = j.at("preprocess_failure_codes").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("planner config: ") + e.what());
  }
  validate_adapter(a);
  return a;
}

nlohmann::json adapter_to_json(const PlannerAdapter& a) {
  return {{"name", a.name},
          {"command", a.command},
          {"executable", a.executable},
          {"encoding", to_string(a.encoding)},
          {"dialect", to_string(a.dialect)},
          {"preprocess_pattern", a.preprocess_pattern},
          {"search_pattern", a.search_pattern},
          {"time_unit_seconds", a.time_unit_seconds},
          {"preprocess_failure_codes", a.preprocess_failure_codes}};
}

std::vector<PlannerAdapter> load_adapters(const fs::path& config) {
  std::ifstream in(config);
  if (!in) throw ConfigError("cannot read planner config " + config.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("planner config " + config.string() + ": " + e.what());
  }
  if (!j.contains("planners") || !j["planners"].is_array())
    throw ConfigError("planner config needs a \"planners\" array");
  std::vector<PlannerAdapter> out;
  for (const auto& p : j["planners"]) out.push_back(adapter_from_json(p));
  return out;
}

nlohmann::json record_to_json(const BenchRecord& r) {
  auto opt = [](const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"task", r.task_id},
          {"planner", r.planner},
          {"repetition", r.repetition},
          {"outcome", to_string(r.outcome)},
          {"preprocess_seconds", opt(r.preprocess_seconds)},
          {"search_seconds", opt(r.search_seconds)},
          {"total_seconds", r.total_seconds},
          {"budget_seconds", r.budget_seconds},
          {"plan_length", opt(r.plan_length)},
          {"verified", r.verified},
          {"phases_known", r.phases_known},
          {"peak_memory_kb", opt(r.peak_memory_kb)},
          {"detail", r.detail}};
}

namespace {

std::string substitute(std::string s, const std::map<std::string, std::string>& vars) {
  for (const auto& [k, v] : vars) {
    for (std::size_t pos = s.find(k); pos != std::string::npos; pos = s.find(k, pos + v.size()))
      s.replace(pos, k.size(), v);
  }
  return s;
}

std::optional<double> extract(const std::string& pattern, const std::string& text, double unit) {
  if (pattern.empty()) return std::nullopt;
  std::regex re(pattern);
  std::optional<double> last;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it) {
    try {
      last = std::stod((*it)[1].str()) * unit;
    } catch (const std::exception&) {
    }
  }
  return last;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Anytime planners number their plans: plan, plan.1, plan.2, ...; take the last one.
std::optional<fs::path> find_plan_file(const fs::path& plan_out) {
  std::optional<fs::path> best;
  if (fs::exists(plan_out)) best = plan_out;
  for (int k = 1; k < 1000; ++k) {
    const fs::path p = plan_out.string() + "." + std::to_string(k);
    if (!fs::exists(p)) break;
    best = p;
  }
  return best;
}

}  // namespace

BenchRecord run_planner(const PlannerAdapter& adapter, const fs::path& domain, const fs::path& problem,
                        double timeout_seconds, const VerificationTarget& target) {
  validate_adapter(adapter);
  if (!target.world || !target.goal) throw ContractViolation("run_planner needs a verification target");
  BenchRecord rec;
  rec.planner = adapter.name;
  rec.budget_seconds = timeout_seconds;

  const fs::path work = make_work_dir("mineplanner-run");
  const fs::path plan_out = work / "plan.txt";
  const std::map<std::string, std::string> vars = {{"{exe}", adapter.executable},
                                                   {"{domain}", fs::absolute(domain).string()},
                                                   {"{problem}", fs::absolute(problem).string()},
                                                   {"{plan_out}", plan_out.string()}};
  std::vector<std::string> argv;
  for (const auto& a : adapter.command) argv.push_back(substitute(a, vars));

  ProcessResult proc;
  try {
    proc = run_process(argv, work, timeout_seconds);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(work, ec);
    throw;
  }
  rec.total_seconds = proc.wall_seconds;
  rec.peak_memory_kb = proc.peak_rss_kb;
  const std::string output = proc.stdout_text + "\n" + proc.stderr_text;
  rec.preprocess_seconds = extract(adapter.preprocess_pattern, output, adapter.time_unit_seconds);
  rec.search_seconds = extract(adapter.search_pattern, output, adapter.time_unit_seconds);
  rec.phases_known = rec.preprocess_seconds.has_value() && rec.search_seconds.has_value();

  const auto plan_file = find_plan_file(plan_out);
  if (proc.timed_out) {
    rec.outcome = Outcome::Timeout;
    rec.detail = "killed at budget";
  } else if (plan_file) {
    try {
      std::string text = read_file(*plan_file);
      Plan plan = parse_plan(text, adapter.dialect);
      // ENHSP plan files may hold bare action lines where stdout has "k: (...)".
      if (adapter.dialect == PlanDialect::Enhsp && plan.actions.empty() && text.find('(') != std::string::npos)
        plan = parse_plan(text, PlanDialect::Canonical);
      const auto v = run_plan(*target.world, plan.actions, *target.goal);
      rec.plan_length = v.plan_length;
      rec.verified = v.verified();
      if (rec.verified) {
        rec.outcome = Outcome::Solved;
      } else {
        rec.outcome = Outcome::SearchFailure;
        rec.detail = v.failing_step ? "plan rejected at step " + std::to_string(*v.failing_step) + ": " + v.failure_reason
                                    : "plan does not reach the goal";
      }
    } catch (const Error& e) {
      rec.outcome = Outcome::SearchFailure;
      rec.detail = std::string("unreadable plan: ") + e.what();
    }
  } else {
    const bool pre_code = std::find(adapter.preprocess_failure_codes.begin(), adapter.preprocess_failure_codes.end(),
                                    proc.exit_code) != adapter.preprocess_failure_codes.end();
    const bool never_searched = !adapter.preprocess_pattern.empty() && !rec.preprocess_seconds;
    rec.outcome = pre_code || never_searched ? Outcome::PreprocessFailure : Outcome::SearchFailure;
    rec.detail = proc.signal ? "terminated by signal " + std::to_string(proc.signal)
                             : "exit code " + std::to_string(proc.exit_code) + ", no plan";
  }
  if (rec.outcome == Outcome::Solved && !rec.phases_known) rec.detail = "phase times unknown";

  std::error_code ec;
  fs::remove_all(work, ec);
  return rec;
}

std::vector<BenchTask> load_suite_tasks(const fs::path& suite_dir) {
  std::vector<fs::path> rel;
  const auto manifest = suite_dir / "manifest.json";
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("manifest: " + std::string(e.what()));
    }
    for (const auto& row : manifest_from_json(j).rows) rel.push_back(row.task_path);
  } else {
    if (!fs::is_directory(suite_dir)) throw NotFoundError("no suite at " + suite_dir.string());
    for (const auto& fam : fs::directory_iterator(suite_dir)) {
      if (!fam.is_directory()) continue;
      for (const auto& var : fs::directory_iterator(fam.path()))
        if (fs::exists(var.path() / "task.yaml")) rel.push_back(fs::relative(var.path() / "task.yaml", suite_dir));
    }
    std::sort(rel.begin(), rel.end());
  }
  std::vector<BenchTask> tasks;
  for (const auto& r : rel) {
    BenchTask t;
    t.dir = (suite_dir / r).parent_path();
    t.id = r.parent_path().generic_string();
    t.spec = load_task(suite_dir / r);
    tasks.push_back(std::move(t));
  }
  return tasks;
}

namespace {

struct TaskFiles {
  fs::path domain;
  fs::path problem;
};

TaskFiles ensure_pddl(const BenchTask& task, const WorldState& world, EncodingKind enc, std::mutex& mu) {
  const auto stem = pddl_identifier(task.spec.name);
  const std::string tag = enc == EncodingKind::Numeric ? "numeric" : "prop";
  TaskFiles f{task.dir / (stem + "-" + tag + "-domain.pddl"), task.dir / (stem + "-" + tag + "-problem.pddl")};
  std::lock_guard lock(mu);
  if (!fs::exists(f.domain) || !fs::exists(f.problem)) write_pddl_files(task.dir, stem, world, task.spec.goal);
  return f;
}

}  // namespace

std::vector<BenchRecord> run_suite(const std::vector<PlannerAdapter>& adapters, const std::vector<BenchTask>& tasks,
                                   const SuiteRunOptions& options) {
  if (options.repetitions < 1) throw ConfigError("repetitions must be at least 1");
  for (const auto& a : adapters) validate_adapter(a);

  struct Job {
    std::size_t task, adapter;
    int rep;
  };
  std::vector<Job> jobs;
  for (std::size_t t = 0; t < tasks.size(); ++t)
    for (std::size_t a = 0; a < adapters.size(); ++a)
      for (int r = 0; r < options.repetitions; ++r) jobs.push_back({t, a, r});

  std::vector<std::optional<WorldState>> worlds(tasks.size());
  for (std::size_t t = 0; t < tasks.size(); ++t) worlds[t].emplace(build_initial_world(tasks[t].spec));

  std::vector<BenchRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex file_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto& job = jobs[i];
      const auto& task = tasks[job.task];
      const auto& adapter = adapters[job.adapter];
      BenchRecord rec;
      try {
        const auto files = ensure_pddl(task, *worlds[job.task], adapter.encoding, file_mu);
        rec = run_planner(adapter, files.domain, files.problem, options.timeout_seconds,
                          {&*worlds[job.task], &task.spec.goal});
      } catch (const Error& e) {
        rec.planner = adapter.name;
        rec.budget_seconds = options.timeout_seconds;
        rec.outcome = Outcome::PreprocessFailure;
        rec.detail = e.what();
      }
      rec.task_id = task.id;
      rec.repetition = job.rep;
      records[i] = std::move(rec);
    }
  };
  const int n = std::max(1, std::min<int>(options.workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return records;
}

namespace {

std::string fmt_seconds(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string fmt_budget(double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, ">%g", b);
  return buf;
}

std::string mean_sd(const std::vector<double>& v) {
  if (v.empty()) return "?";
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() == 1) return fmt_seconds(mean);
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return fmt_seconds(mean) + "±" + fmt_seconds(sd);
}

CellSummary summarize_cell(const std::vector<const BenchRecord*>& runs) {
  CellSummary c;
  c.task_id = runs.front()->task_id;
  c.planner = runs.front()->planner;
  c.runs = runs.size();
  std::vector<double> pre, search, total;
  bool any_pre_fail = false, any_timeout = false, any_search_fail = false;
  double budget = 0;
  for (const auto* r : runs) {
    budget = std::max(budget, r->budget_seconds);
    switch (r->outcome) {
      case Outcome::Solved: ++c.solved; break;
      case Outcome::PreprocessFailure: any_pre_fail = true; break;
      case Outcome::Timeout: any_timeout = true; break;
      case Outcome::SearchFailure: any_search_fail = true; break;
    }
    if (r->preprocess_seconds) pre.push_back(*r->preprocess_seconds);
    if (r->search_seconds) search.push_back(*r->search_seconds);
    total.push_back(r->total_seconds);
  }
  if (any_pre_fail) {
    c.preprocess = c.search = c.total = "---";
  } else if (any_timeout) {
    c.preprocess = pre.empty() ? fmt_budget(budget) : mean_sd(pre);
    c.search = c.total = fmt_budget(budget);
  } else if (any_search_fail) {
    c.preprocess = mean_sd(pre);
    c.search = c.total = "fail";
  } else {
    c.preprocess = mean_sd(pre);
    c.search = mean_sd(search);
    c.total = mean_sd(total);
  }
  return c;
}

}  // namespace

std::vector<CellSummary> summarize(const std::vector<BenchRecord>& records) {
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const BenchRecord*>> cells;
  for (const auto& r : records) {
    auto key = std::make_pair(r.task_id, r.planner);
    auto& v = cells[key];
    if (v.empty()) order.push_back(key);
    v.push_back(&r);
  }
  std::vector<CellSummary> out;
  for (const auto& k : order) out.push_back(summarize_cell(cells[k]));
  return out;
}

namespace {

void write_row(std::ostringstream& os, const std::vector<std::string>& cells, TableFormat format) {
  const bool md = format == TableFormat::Markdown;
  if (md) os << "| ";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << (md ? " | " : ",");
    const bool quote = !md && cells[i].find_first_of(",\"") != std::string::npos;
    os << (quote ? "\"" + cells[i] + "\"" : cells[i]);
  }
  if (md) os << " |";
  os << "\n";
}

void write_rule(std::ostringstream& os, std::size_t columns, std::size_t text_columns, TableFormat format) {
  if (format != TableFormat::Markdown) return;
  os << "|";
  for (std::size_t i = 0; i < columns; ++i) os << (i < text_columns ? "---|" : "---:|");
  os << "\n";
}

}  // namespace

std::string emit_report(const std::vector<BenchRecord>& records, TableFormat format) {
  const auto cells = summarize(records);
  std::vector<std::string> planners, tasks;
  std::map<std::pair<std::string, std::string>, const CellSummary*> index;
  for (const auto& c : cells) {
    if (std::find(planners.begin(), planners.end(), c.planner) == planners.end()) planners.push_back(c.planner);
    if (std::find(tasks.begin(), tasks.end(), c.task_id) == tasks.end()) tasks.push_back(c.task_id);
    index[{c.task_id, c.planner}] = &c;
  }
  std::ostringstream os;
  std::vector<std::string> header = {"task", "variant"};
  for (const auto& p : planners)
    for (const char* col : {"preprocess", "search", "total"}) header.push_back(p + " " + col);
  write_row(os, header, format);
  write_rule(os, header.size(), 2, format);
  for (const auto& t : tasks) {
    const auto slash = t.rfind('/');
    std::vector<std::string> row = {slash == std::string::npos ? t : t.substr(0, slash),
                                    slash == std::string::npos ? "" : t.substr(slash + 1)};
    for (const auto& p : planners) {
      const auto it = index.find({t, p});
      if (it == index.end()) {
        row.insert(row.end(), {"", "", ""});
      } else {
        row.insert(row.end(), {it->second->preprocess, it->second->search, it->second->total});
      }
    }
    write_row(os, row, format);
  }
  return os.str();
}

std::vector<ScalingRecord> scaling_experiment(const TaskSpec& base, const std::vector<ObservationRange>& steps,
                                              const PlannerAdapter* adapter, double timeout_seconds) {
  std::vector<ScalingRecord> out;
  for (const auto& range : steps) {
    TaskSpec spec = base;
    spec.observation_range = range;
    const WorldState world = build_initial_world(spec);
    ScalingRecord rec;
    rec.range = range;
    rec.stats = world_stats(world, spec.goal);
    const auto stem = pddl_identifier(spec.name.empty() ? "task" : spec.name);
    for (auto enc : {EncodingKind::Numeric, EncodingKind::Propositional}) {
      const auto task = compile_task(world, spec.goal, enc, stem);
      const auto dbytes = pddl::print_domain(task.domain).size();
      const auto pbytes = pddl::print_problem(task.problem).size();
      if (enc == EncodingKind::Numeric) {
        rec.objects_num = task.problem.objects.size();
        rec.domain_bytes_num = dbytes;
        rec.problem_bytes_num = pbytes;
      } else {
        rec.objects_prop = task.problem.objects.size();
        rec.domain_bytes_prop = dbytes;
        rec.problem_bytes_prop = pbytes;
      }
    }
    if (adapter) {
      const fs::path dir = make_work_dir("mineplanner-scale");
      try {
        const auto files = write_pddl_files(dir, stem, world, spec.goal);
        const bool num = adapter->encoding == EncodingKind::Numeric;
        auto r = run_planner(*adapter, num ? files.numeric_domain : files.prop_domain,
                             num ? files.numeric_problem : files.prop_problem, timeout_seconds, {&world, &spec.goal});
        r.task_id = stem + "@" + std::to_string(range.x) + "x" + std::to_string(range.y) + "x" + std::to_string(range.z);
        rec.run = std::move(r);
      } catch (...) {
        std::error_code ec;
        fs::remove_all(dir, ec);
        throw;
      }
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
    const bool stop = rec.run && rec.run->outcome == Outcome::PreprocessFailure;
    out.push_back(std::move(rec));
    if (stop) break;
  }
  return out;
}

double fit_power_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ContractViolation("power fit needs two or more paired points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) throw ContractViolation("power fit needs positive values");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) throw ContractViolation("power fit needs distinct x values");
  return (n * sxy - sx * sy) / denom;
}

std::string emit_scaling_report(const std::vector<ScalingRecord>& records, TableFormat format) {
  std::ostringstream os;
  std::vector<std::string> header = {"range",          "objects_prop",  "objects_num",   "init_prop",
                                     "init_num",       "problem_bytes_prop", "problem_bytes_num",
                                     "preprocess",     "search",        "total",         "outcome"};
  write_row(os, header, format);
  write_rule(os, header.size(), 1, format);
  for (const auto& r : records) {
    std::vector<std::string> row = {
        "(" + std::to_string(r.range.x) + ", " + std::to_string(r.range.y) + ", " + std::to_string(r.range.z) + ")",
        std::to_string(r.objects_prop),
        std::to_string(r.objects_num),
        std::to_string(r.stats.init_predicates_prop),
        std::to_string(r.stats.init_predicates_num),
        std::to_string(r.problem_bytes_prop),
        std::to_string(r.problem_bytes_num)};
    if (r.run) {
      const auto cell = summarize({*r.run}).front();
      row.insert(row.end(), {cell.preprocess, cell.search, cell.total, std::string(to_string(r.run->outcome))});
    } else {
      row.insert(row.end(), {"", "", "", ""});
    }
    write_row(os, row, format);
  }
  return os.str();
}

}  // namespace mineplanner
