#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mineplanner/action.hpp"
#include "mineplanner/task_spec.hpp"
#include "mineplanner/world.hpp"

namespace mineplanner {

/// Precondition identifiers reported for rejected steps.
namespace reason {
inline constexpr const char* kAgentDead = "agent-dead";
inline constexpr const char* kUnknownType = "unknown-type";
inline constexpr const char* kNoSupport = "no-support";
inline constexpr const char* kBlockedBody = "blocked-body";
inline constexpr const char* kBlockedHead = "blocked-head";
inline constexpr const char* kBlockedAbove = "blocked-above";
inline constexpr const char* kItemInPath = "item-in-path";
inline constexpr const char* kNoItem = "no-item";
inline constexpr const char* kInventoryFull = "inventory-full";
inline constexpr const char* kInventoryEmpty = "inventory-empty";
inline constexpr const char* kOccupied = "occupied";
inline constexpr const char* kOutOfBounds = "out-of-bounds";
inline constexpr const char* kNoBlock = "no-block";
inline constexpr const char* kItemOnTop = "item-on-top";
inline constexpr const char* kGoalUnmet = "goal-unmet";
}  // namespace reason

struct StepOutcome {
  std::optional<WorldState> world;  // set when accepted
  std::string reason;               // set when rejected

  bool ok() const { return world.has_value(); }
};

/// Why `action` cannot be taken, or nullopt when it can. CheckGoal is always
/// applicable here; its goal test happens in run_plan.
std::optional<std::string> rejection(const WorldState& world, const Action& action);
bool applicable(const WorldState& world, const Action& action);
StepOutcome step(const WorldState& world, const Action& action);
/// Applies an action known to be applicable, in place.
void apply_unchecked(WorldState& world, const Action& action);

/// Applicable non-checkgoal actions ordered by template, direction, then type.
std::vector<Action> enumerate_applicable(const WorldState& world);

bool goal_satisfied(const WorldState& world, const GoalSpec& goal);

struct GoalCheck {
  std::string description;
  bool met = false;
};
/// One entry per goal conjunct, in the order agent, blocks, inventory.
std::vector<GoalCheck> goal_checklist(const WorldState& world, const GoalSpec& goal);

struct VerificationResult {
  std::size_t plan_length = 0;                // non-checkgoal steps
  std::optional<std::size_t> failing_step;    // 1-based
  std::string failure_reason;
  bool goal_satisfied = false;
  std::uint64_t final_digest = 0;

  bool verified() const { return !failing_step && goal_satisfied; }
};

VerificationResult run_plan(const WorldState& world, const std::vector<Action>& plan,
                            const GoalSpec& goal);
/// Same, also returning the last accepted world.
VerificationResult run_plan(const WorldState& world, const std::vector<Action>& plan,
                            const GoalSpec& goal, WorldState& final_world);

}  // namespace mineplanner
