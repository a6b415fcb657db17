#include "mineplanner/block_types.hpp"

#include <algorithm>

#include "mineplanner/error.hpp"

namespace mineplanner {

BlockTypeRegistry::BlockTypeRegistry(std::vector<BlockTypeInfo> types) : types_(std::move(types)) {
  for (const auto& t : types_) {
    if (!is_valid_type_name(t.name)) throw ConfigError("invalid block type name '" + t.name + "'");
  }
  std::sort(types_.begin(), types_.end(),
            [](const BlockTypeInfo& a, const BlockTypeInfo& b) { return a.name < b.name; });
  auto dup = std::adjacent_find(types_.begin(), types_.end(), [](const auto& a, const auto& b) {
    return a.name == b.name;
  });
  if (dup != types_.end()) throw ConfigError("duplicate block type '" + dup->name + "'");
}

const BlockTypeRegistry& BlockTypeRegistry::standard() {
  static const BlockTypeRegistry registry({
      {"bricks", true, true},   {"cobblestone", true, true}, {"diamond", false, true},
      {"dirt", true, true},     {"flower", true, true},      {"glass", true, true},
      {"grass_block", true, true}, {"leaves", true, true},   {"log", true, true},
      {"obsidian", true, true}, {"planks", true, true},      {"sand", true, true},
      {"stone", true, true},    {"wool", true, true},
  });
  return registry;
}

const BlockTypeInfo* BlockTypeRegistry::find(std::string_view name) const {
  auto it = std::lower_bound(types_.begin(), types_.end(), name,
                             [](const BlockTypeInfo& t, std::string_view n) { return t.name < n; });
  if (it == types_.end() || it->name != name) return nullptr;
  return &*it;
}

bool BlockTypeRegistry::placeable(std::string_view name) const {
  const auto* info = find(name);
  return info != nullptr && info->placeable;
}

bool is_valid_type_name(std::string_view name) {
  if (name.empty() || name.front() < 'a' || name.front() > 'z') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace mineplanner
