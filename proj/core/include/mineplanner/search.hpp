#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mineplanner/action.hpp"
#include "mineplanner/codegen.hpp"
#include "mineplanner/task_spec.hpp"
#include "mineplanner/world.hpp"

namespace mineplanner {

struct SearchLimits {
  std::size_t max_expanded = 2'000'000;
  std::size_t max_depth = 256;
  double wall_seconds = 120.0;
  /// When false the search is plain breadth-first (unit-cost, zero heuristic).
  bool use_heuristic = true;
};

enum class SearchStatus { Solved, Exhausted, LimitReached };

std::string_view to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::vector<Action> plan;  // without checkgoal
  std::size_t expanded = 0;
  std::size_t generated = 0;
  std::string detail;  // which limit was hit, or why the goal is unreachable

  bool solved() const { return status == SearchStatus::Solved; }
};

/// Lower bound on the remaining number of steps; consistent.
std::size_t goal_distance_bound(const WorldState& world, const GoalSpec& goal);

/// Shortest plan in unit steps over the simulator, best-first on g + bound with
/// duplicate detection on world digests (full comparison on digest collisions).
SearchResult bfs_solve(const WorldState& world, const GoalSpec& goal, const SearchLimits& limits = {});

struct Mismatch {
  std::uint64_t digest = 0;  // world where the disagreement showed up
  std::string side;          // which view disagrees
  std::string action;
  std::string detail;
};

struct EquivalenceReport {
  std::size_t states_compared = 0;
  std::vector<Mismatch> mismatches;

  bool pass() const { return mismatches.empty(); }
  std::string str() const;
};

/// Edits a generated domain before it is grounded; used for fault injection.
using DomainMutator = std::function<void(pddl::Domain&)>;

/// Breadth-first over simulator worlds to `depth`. At every world the applicable action
/// names, the checkgoal verdict and each successor are compared with the compiled
/// encoding interpreted by the ground evaluator.
EquivalenceReport check_sim_vs_pddl(const WorldState& world, const GoalSpec& goal, EncodingKind enc,
                                    std::size_t depth, const DomainMutator& mutate = {});

/// Steps the numeric and propositional encodings in lockstep to `depth`, comparing
/// applicable names and decoded successor worlds.
EquivalenceReport check_encoding_bisimulation(const WorldState& world, const GoalSpec& goal,
                                              std::size_t depth, const DomainMutator& mutate_numeric = {},
                                              const DomainMutator& mutate_prop = {});

}  // namespace mineplanner
