#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mineplanner {

struct BlockTypeInfo {
  std::string name;
  bool placeable = true;
  bool collectible = true;
};

/// Closed set of type names known for a run. Names are lowercase with underscores.
class BlockTypeRegistry {
 public:
  explicit BlockTypeRegistry(std::vector<BlockTypeInfo> types);

  /// grass_block, dirt, stone, cobblestone, sand, log, planks, leaves, obsidian,
  /// diamond, glass, bricks, flower, wool.
  static const BlockTypeRegistry& standard();

  const BlockTypeInfo* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  bool placeable(std::string_view name) const;
  const std::vector<BlockTypeInfo>& types() const { return types_; }

 private:
  std::vector<BlockTypeInfo> types_;
};

inline constexpr std::string_view kGroundType = "grass_block";

/// True when `name` matches [a-z][a-z0-9_]*.
bool is_valid_type_name(std::string_view name);

}  // namespace mineplanner
