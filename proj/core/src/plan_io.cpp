#include "mineplanner/plan_io.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>

#include "mineplanner/codegen.hpp"
#include "mineplanner/error.hpp"

namespace mineplanner {

std::string_view to_string(PlanDialect d) {
  switch (d) {
    case PlanDialect::FdSasPlan: return "fd";
    case PlanDialect::Enhsp: return "enhsp";
    case PlanDialect::Canonical: return "canonical";
  }
  return "?";
}

std::optional<PlanDialect> parse_dialect(std::string_view s) {
  if (s == "fd" || s == "fd-sas-plan" || s == "sas_plan") return PlanDialect::FdSasPlan;
  if (s == "enhsp") return PlanDialect::Enhsp;
  if (s == "canonical") return PlanDialect::Canonical;
  return std::nullopt;
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<std::int32_t> numbered(const std::string& arg) {
  if (auto p = CoordinateCodec::position_index(arg)) return p;
  return CoordinateCodec::count_index(arg);
}

// Canonical plans carry at most the agent; planner output carries every parameter.
void check_arguments(const pddl::Action& schema, const std::vector<std::string>& args) {
  if (args.size() <= 1 && schema.parameters.size() >= 1) {
    if (!args.empty() && args[0] != kAgentObject) throw BindingError(schema.name + ": unknown agent " + args[0]);
    return;
  }
  if (args.size() != schema.parameters.size()) {
    throw BindingError(schema.name + " expects " + std::to_string(schema.parameters.size()) +
                       " arguments, got " + std::to_string(args.size()));
  }
  std::map<std::string, std::string> bound;
  for (std::size_t i = 0; i < args.size(); ++i) bound[schema.parameters[i].name] = args[i];
  if (schema.precondition.kind != pddl::Condition::Kind::And) return;
  for (const auto& c : schema.precondition.children) {
    if (c.kind != pddl::Condition::Kind::Atom) continue;
    if (c.name != "are-seq-pos" && c.name != "are-seq-count") continue;
    const auto a = bound.find(c.args[0]);
    const auto b = bound.find(c.args[1]);
    if (a == bound.end() || b == bound.end()) continue;
    const auto ia = numbered(a->second);
    const auto ib = numbered(b->second);
    if (!ia || !ib || *ib != *ia + 1) {
      throw BindingError(schema.name + ": " + a->second + " and " + b->second + " are not consecutive");
    }
  }
}

struct Line {
  std::string name;
  std::vector<std::string> args;
};

// Parses "(name a b c)" with optional trailing text after the closing paren.
std::optional<Line> parse_sexpr(std::string_view s) {
  const auto open = s.find('(');
  const auto close = s.find(')', open == std::string_view::npos ? 0 : open);
  if (open == std::string_view::npos || close == std::string_view::npos) return std::nullopt;
  if (s.substr(0, open).find_first_not_of(" \t") != std::string_view::npos) return std::nullopt;
  std::istringstream is(std::string(s.substr(open + 1, close - open - 1)));
  Line l;
  if (!(is >> l.name)) return std::nullopt;
  l.name = lower(l.name);
  for (std::string a; is >> a;) l.args.push_back(lower(a));
  return l;
}

}  // namespace

Action bind_action(std::string_view name, const std::vector<std::string>& args, const BindContext& context) {
  auto action = parse_action_name(name);
  if (context.domain) {
    const auto* schema = context.domain->find_action(lower(name));
    if (!schema) throw BindingError("action '" + std::string(name) + "' is not in the task's catalog");
    check_arguments(*schema, args);
  }
  return action;
}

Plan parse_plan(std::string_view text, PlanDialect dialect, const BindContext& context) {
  static const std::regex kCost(R"(^;\s*cost\s*=\s*(-?\d+))", std::regex::icase);
  static const std::regex kEnhspStep(R"(^\s*(\d+(?:\.\d+)?)\s*:\s*(.*)$)");
  Plan plan;
  plan.dialect = dialect;
  std::istringstream is{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto first = raw.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    std::string line = raw.substr(first);
    if (line[0] == ';') {
      std::smatch m;
      if (std::regex_search(line, m, kCost)) plan.cost = std::stoll(m[1].str());
      continue;
    }
    std::string body = line;
    if (dialect == PlanDialect::Enhsp) {
      std::smatch m;
      if (!std::regex_match(line, m, kEnhspStep)) continue;  // solver chatter
      body = m[2].str();
    }
    const auto parsed = parse_sexpr(body);
    if (!parsed) throw ParseError("unparseable plan line '" + line + "'", lineno);
    try {
      plan.actions.push_back(bind_action(parsed->name, parsed->args, context));
    } catch (const BindingError& e) {
      throw BindingError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return plan;
}

std::string serialize_plan(const Plan& plan) {
  std::string out;
  for (const auto& a : plan.actions) out += "(" + a.name() + " " + std::string(kAgentObject) + ")\n";
  for (const auto& c : plan.comments) out += "; " + c + "\n";
  return out;
}

}  // namespace mineplanner
