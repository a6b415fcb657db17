#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mineplanner/block_types.hpp"
#include "mineplanner/geometry.hpp"
#include "mineplanner/task_spec.hpp"

namespace mineplanner {

using TypeId = std::uint8_t;

/// The type names a task can ever mention, fixed when the initial world is built.
/// Ids follow lexicographic name order. A type is a block type when it can exist as
/// a block (placed initially, demanded by the goal, or placeable from inventory) and
/// an item type when the initial world holds an item stack of it.
class Vocabulary {
 public:
  Vocabulary(std::vector<std::string> names, std::vector<bool> block_types,
             std::vector<bool> item_types);

  static std::shared_ptr<const Vocabulary> for_task(const TaskSpec& spec,
                                                    const BlockTypeRegistry& registry);

  std::size_t size() const { return names_.size(); }
  const std::string& name(TypeId id) const { return names_.at(id); }
  std::optional<TypeId> find(std::string_view name) const;
  TypeId id(std::string_view name) const;  // throws BindingError
  bool is_block_type(TypeId id) const { return block_.at(id); }
  bool is_item_type(TypeId id) const { return item_.at(id); }
  std::vector<TypeId> block_types() const;
  std::vector<TypeId> item_types() const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<bool> block_;
  std::vector<bool> item_;
};

struct ItemStack {
  TypeId type = 0;
  int count = 1;
  bool present = true;  // false once picked up; the record keeps its original cell
  friend bool operator==(const ItemStack&, const ItemStack&) = default;
};

struct CellContent {
  enum class Kind { Empty, Block, Item };
  Kind kind = Kind::Empty;
  std::string type;
  int count = 0;

  static CellContent empty() { return {}; }
  friend bool operator==(const CellContent&, const CellContent&) = default;
};

/// Dense voxel occupancy plus a sparse item layer, the agent and its inventory.
class WorldState {
 public:
  WorldState(WorldBounds bounds, std::shared_ptr<const Vocabulary> vocabulary,
             std::int32_t ground_y);

  const WorldBounds& bounds() const { return bounds_; }
  const Vocabulary& vocabulary() const { return *vocabulary_; }
  const std::shared_ptr<const Vocabulary>& vocabulary_ptr() const { return vocabulary_; }
  std::int32_t ground_y() const { return ground_y_; }

  /// Present block at `p`; nullopt for empty or out-of-bounds cells.
  std::optional<TypeId> block_at(const Position& p) const {
    if (!bounds_.contains(p)) return std::nullopt;
    const auto v = cells_[bounds_.index(p)];
    if (v == 0) return std::nullopt;
    return static_cast<TypeId>(v - 1);
  }
  bool has_block(const Position& p) const { return block_at(p).has_value(); }
  /// Throws BuildError when `p` is out of bounds.
  void set_block(const Position& p, std::optional<TypeId> type);

  /// Present item stack at `p`, or nullptr.
  const ItemStack* item_at(const Position& p) const;
  /// All stacks ever introduced, including picked-up ones.
  const std::map<Position, ItemStack>& items() const { return items_; }
  void add_item(const Position& p, TypeId type, int count);
  void remove_item(const Position& p);

  const Position& agent() const { return agent_; }
  void set_agent(const Position& p) { agent_ = p; }
  bool agent_alive() const { return alive_; }
  void set_agent_alive(bool alive) { alive_ = alive; }

  int inventory(TypeId type) const { return inventory_.at(type); }
  void set_inventory(TypeId type, int count) { inventory_.at(type) = count; }
  const std::vector<int>& inventory_counts() const { return inventory_; }

  std::size_t count_blocks(TypeId type) const;
  std::size_t count_present_blocks() const;
  /// Calls fn(position, type) for every present block in dense-index order.
  template <typename Fn>
  void for_each_block(Fn&& fn) const {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (cells_[i] != 0) fn(bounds_.position(i), static_cast<TypeId>(cells_[i] - 1));
    }
  }

  /// Stable 64-bit digest over cells, items, agent and inventory.
  std::uint64_t digest() const;
  /// Descriptions of violated world invariants; empty when consistent.
  std::vector<std::string> invariant_violations() const;

  friend bool operator==(const WorldState& a, const WorldState& b);

 private:
  WorldBounds bounds_;
  std::shared_ptr<const Vocabulary> vocabulary_;
  std::int32_t ground_y_ = 0;
  std::vector<std::uint8_t> cells_;
  std::map<Position, ItemStack> items_;
  Position agent_;
  bool alive_ = true;
  std::vector<int> inventory_;
};

/// Ground layer at ground_y across the bounds, then spec blocks (overriding ground),
/// items, inventory and the agent. Throws BuildError.
WorldState build_initial_world(const TaskSpec& spec,
                               const BlockTypeRegistry& registry = BlockTypeRegistry::standard());

CellContent query(const WorldState& world, const Position& pos);

/// Number of position objects in the propositional encoding: the y axis carries two
/// extra indices so that an agent standing on the top layer still has a head cell.
std::int32_t position_object_count(const WorldBounds& bounds);

struct TaskStats {
  std::size_t initial_objects = 0;
  std::size_t init_predicates_prop = 0;
  std::size_t init_predicates_num = 0;
  std::size_t goal_predicates = 0;
  friend bool operator==(const TaskStats&, const TaskStats&) = default;
};

TaskStats world_stats(const WorldState& world, const GoalSpec& goal);

nlohmann::json world_snapshot(const WorldState& world);

}  // namespace mineplanner
