#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mineplanner/pddl.hpp"
#include "mineplanner/pddl_eval.hpp"
#include "mineplanner/task_spec.hpp"
#include "mineplanner/world.hpp"

namespace mineplanner {

enum class EncodingKind { Numeric, Propositional };

std::string_view to_string(EncodingKind e);
std::optional<EncodingKind> parse_encoding(std::string_view s);

/// Integer-object naming for the propositional encoding. Every axis shares one pool
/// of position objects; coordinates are shifted by -min so indices start at zero.
class CoordinateCodec {
 public:
  explicit CoordinateCodec(const WorldBounds& bounds);

  std::int32_t size() const { return size_; }
  const Position& offset() const { return offset_; }

  /// Throws EmissionError when the shifted value falls outside 0..size-1.
  std::int32_t encode(int axis, std::int32_t value) const;
  std::int32_t decode(int axis, std::int32_t index) const;
  std::array<std::int32_t, 3> encode(const Position& p) const;
  Position decode(const std::array<std::int32_t, 3>& idx) const;

  static std::string position_name(std::int32_t index);
  static std::string count_name(int count);
  /// Index of "position<k>" / "count<k>", or nullopt for other names.
  static std::optional<std::int32_t> position_index(std::string_view name);
  static std::optional<std::int32_t> count_index(std::string_view name);

 private:
  std::int32_t size_ = 0;
  Position offset_;
};

inline constexpr std::string_view kAgentObject = "ag0";

/// Object names shared by both encodings.
std::string block_type_name(std::string_view type);  // "<t>-block"
std::string item_type_name(std::string_view type);   // "<t>-item"

/// Lifted operators for every action the world's vocabulary can name, in the order of
/// action_catalog, excluding checkgoal.
std::vector<pddl::Action> operator_catalog(const WorldState& world, EncodingKind enc);

/// Precondition is the goal itself; the only effect asserts goal-achieved.
pddl::Action gen_checkgoal(const GoalSpec& goal, EncodingKind enc, const WorldBounds& bounds);

pddl::Domain gen_domain(const WorldState& world, const GoalSpec& goal, EncodingKind enc);
pddl::Problem gen_problem(const WorldState& world, const GoalSpec& goal, EncodingKind enc,
                          const std::string& name = "task");

/// Lowercase, [a-z0-9_-] only; used for PDDL names and file stems.
std::string pddl_identifier(std::string_view text);

struct CompiledTask {
  EncodingKind encoding = EncodingKind::Numeric;
  pddl::Domain domain;
  pddl::Problem problem;
};

CompiledTask compile_task(const WorldState& world, const GoalSpec& goal, EncodingKind enc,
                          const std::string& name = "task");

/// Reads a world back out of a ground state of either encoding. `reference` supplies
/// bounds, vocabulary and ground level.
WorldState decode_state(const pddl::GroundContext& ctx, const pddl::GroundState& state,
                        EncodingKind enc, const WorldState& reference);

struct EmittedFiles {
  std::filesystem::path numeric_domain;
  std::filesystem::path numeric_problem;
  std::filesystem::path prop_domain;
  std::filesystem::path prop_problem;
};

/// Writes `<stem>-numeric-{domain,problem}.pddl` and `<stem>-prop-{domain,problem}.pddl`.
EmittedFiles write_pddl_files(const std::filesystem::path& dir, const std::string& stem,
                              const WorldState& world, const GoalSpec& goal);

}  // namespace mineplanner
