#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mineplanner/action.hpp"
#include "mineplanner/pddl.hpp"

namespace mineplanner {

enum class PlanDialect { FdSasPlan, Enhsp, Canonical };

std::string_view to_string(PlanDialect d);
std::optional<PlanDialect> parse_dialect(std::string_view s);

struct Plan {
  std::vector<Action> actions;
  std::optional<std::int64_t> cost;
  PlanDialect dialect = PlanDialect::Canonical;
  std::vector<std::string> comments;  // written after the actions by serialize_plan
};

/// Optional knowledge used while binding: the domain the plan was produced for. When
/// present, argument counts are checked and successor facts between position or count
/// arguments must hold.
struct BindContext {
  const pddl::Domain* domain = nullptr;
};

/// Parses the action name and, given a context, validates grounded arguments.
/// Throws BindingError.
Action bind_action(std::string_view name, const std::vector<std::string>& args = {},
                   const BindContext& context = {});

/// fd: `(name args)` lines and a `; cost = N (unit cost)` comment.
/// enhsp: `k: (name args)` lines; other stdout lines are ignored.
/// canonical: `(name args)` lines.
/// Throws ParseError (with line) or BindingError.
Plan parse_plan(std::string_view text, PlanDialect dialect, const BindContext& context = {});

/// Canonical text: one `(name ag0)` line per action, then `; ` comment lines.
std::string serialize_plan(const Plan& plan);

}  // namespace mineplanner
