#include "mineplanner/session.hpp"

#include <cstdio>
#include <random>

#include "mineplanner/plan_io.hpp"
#include "mineplanner/simulator.hpp"

namespace mineplanner {

SessionStore::Started SessionStore::start(const TaskSpec& spec) {
  auto report = validate_task(spec);
  if (!report.valid()) throw TaskRejected(std::move(report));
  WorldState world = [&] {
    try {
      return build_initial_world(spec);
    } catch (const BuildError& e) {
      ValidationReport r;
      r.violations.push_back({"build", e.what()});
      throw TaskRejected(std::move(r));
    }
  }();
  auto s = std::make_shared<Session>(spec, std::move(world));
  {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    std::unique_lock lock(mu_);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04llx%012llx", static_cast<unsigned long long>(++counter_ & 0xffff),
                  static_cast<unsigned long long>(rng() & 0xffffffffffffull));
    s->id = buf;
    sessions_.emplace(s->id, s);
  }
  std::lock_guard lock(s->mu);
  return {s->id, message(*s, std::nullopt)};
}

SessionStore::Started SessionStore::start_from_yaml(std::string_view yaml) {
  TaskSpec spec;
  try {
    spec = parse_task(yaml);
  } catch (const Error& e) {
    ValidationReport r;
    r.violations.push_back({"parse", e.what()});
    throw TaskRejected(std::move(r));
  }
  return start(spec);
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("no session '" + id + "'");
  return it->second;
}

nlohmann::json SessionStore::message(const Session& s, std::optional<std::int64_t> seq) {
  nlohmann::json goal = nlohmann::json::array();
  bool all = true;
  for (const auto& c : goal_checklist(s.current, s.task.goal)) {
    goal.push_back({{"description", c.description}, {"met", c.met}});
    all = all && c.met;
  }
  nlohmann::json j = {{"v", kProtocolVersion},
                      {"type", "state"},
                      {"session", s.id},
                      {"task", s.task.name},
                      {"world", world_snapshot(s.current)},
                      {"goal_satisfied", goal_satisfied(s.current, s.task.goal)},
                      {"goal", goal},
                      {"trace_length", s.trace.size()}};
  j["seq"] = seq ? nlohmann::json(*seq) : nlohmann::json(nullptr);
  if (s.last) {
    j["last"] = {{"command", s.last->command}, {"accepted", s.last->accepted}};
    j["last"]["reason"] = s.last->accepted ? nlohmann::json(nullptr) : nlohmann::json(s.last->reason);
  } else {
    j["last"] = nullptr;
  }
  return j;
}

namespace {

Action bind_command(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ProtocolError("empty command");
  text.remove_prefix(first);
  try {
    if (text.front() == '(') {
      const auto plan = parse_plan(text, PlanDialect::Canonical);
      if (plan.actions.size() != 1) throw ProtocolError("expected exactly one action");
      return plan.actions.front();
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return bind_action(text.substr(0, last + 1));
  } catch (const ParseError& e) {
    throw ProtocolError(e.what());
  } catch (const BindingError& e) {
    throw ProtocolError(e.what());
  }
}

std::optional<std::int64_t> read_seq(const nlohmann::json& m) {
  if (!m.contains("seq") || m["seq"].is_null()) return std::nullopt;
  if (!m["seq"].is_number_integer()) throw ProtocolError("seq must be an integer");
  return m["seq"].get<std::int64_t>();
}

}  // namespace

nlohmann::json SessionStore::handle(const std::string& id, const nlohmann::json& m) {
  if (!m.is_object()) throw ProtocolError("message must be a JSON object");
  if (m.contains("v") && (!m["v"].is_number_integer() || m["v"].get<int>() != kProtocolVersion))
    throw ProtocolError("unsupported protocol version");
  const auto seq = read_seq(m);
  const std::string type = m.contains("type") && m["type"].is_string() ? m["type"].get<std::string>() : "command";
  if (type == "command") {
    if (!m.contains("command") || !m["command"].is_string()) throw ProtocolError("command must be a string");
    return apply_command(id, m["command"].get<std::string>(), seq);
  }
  if (type == "undo") return undo(id, seq);
  if (type == "state") {
    auto j = state(id);
    j["seq"] = seq ? nlohmann::json(*seq) : nlohmann::json(nullptr);
    return j;
  }
  throw ProtocolError("unknown message type '" + type + "'");
}

nlohmann::json SessionStore::apply_command(const std::string& id, std::string_view command,
                                           std::optional<std::int64_t> seq) {
  const auto s = find(id);
  const Action action = bind_command(command);
  std::lock_guard lock(s->mu);
  StepReport report{action.name(), false, {}};
  if (action.tmpl == Template::CheckGoal) {
    report.accepted = goal_satisfied(s->current, s->task.goal);
    if (!report.accepted) report.reason = std::string(reason::kGoalUnmet);
  } else {
    auto out = step(s->current, action);
    report.accepted = out.ok();
    if (out.ok()) {
      s->current = std::move(*out.world);
    } else {
      report.reason = out.reason;
    }
  }
  if (report.accepted) s->trace.push_back(action);
  s->last = std::move(report);
  return message(*s, seq);
}

nlohmann::json SessionStore::undo(const std::string& id, std::optional<std::int64_t> seq) {
  const auto s = find(id);
  std::lock_guard lock(s->mu);
  if (s->trace.empty()) {
    s->last = StepReport{"undo", false, "empty-trace"};
    return message(*s, seq);
  }
  s->trace.pop_back();
  WorldState w = s->initial;
  for (const auto& a : s->trace)
    if (a.tmpl != Template::CheckGoal) apply_unchecked(w, a);
  s->current = std::move(w);
  s->last = StepReport{"undo", true, {}};
  return message(*s, seq);
}

nlohmann::json SessionStore::state(const std::string& id) const {
  const auto s = find(id);
  std::lock_guard lock(s->mu);
  return message(*s, std::nullopt);
}

std::string SessionStore::export_trace(const std::string& id) const {
  const auto s = find(id);
  std::lock_guard lock(s->mu);
  Plan plan;
  plan.actions = s->trace;
  plan.comments.push_back("task: " + s->task.name);
  plan.comments.push_back(std::string("goal-satisfied: ") + (goal_satisfied(s->current, s->task.goal) ? "true" : "false"));
  return serialize_plan(plan);
}

std::vector<Action> SessionStore::trace(const std::string& id) const {
  const auto s = find(id);
  std::lock_guard lock(s->mu);
  return s->trace;
}

WorldState SessionStore::world(const std::string& id) const {
  const auto s = find(id);
  std::lock_guard lock(s->mu);
  return s->current;
}

bool SessionStore::replay_consistent(const std::string& id) const {
  const auto s = find(id);
  std::lock_guard lock(s->mu);
  WorldState w = s->initial;
  const auto v = run_plan(s->initial, s->trace, GoalSpec{}, w);
  return !v.failing_step && w.digest() == s->current.digest() && w == s->current;
}

bool SessionStore::close(const std::string& id) {
  std::unique_lock lock(mu_);
  return sessions_.erase(id) > 0;
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

}  // namespace mineplanner
