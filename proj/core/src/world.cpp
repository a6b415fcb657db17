#include "mineplanner/world.hpp"

#include <algorithm>
#include <set>

#include "mineplanner/error.hpp"

namespace mineplanner {

namespace {

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ull;
    }
  }
  void i32(std::int32_t v) {
    const auto u = static_cast<std::uint32_t>(v);
    const unsigned char b[4] = {static_cast<unsigned char>(u), static_cast<unsigned char>(u >> 8),
                                static_cast<unsigned char>(u >> 16),
                                static_cast<unsigned char>(u >> 24)};
    bytes(b, 4);
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> names, std::vector<bool> block_types,
                       std::vector<bool> item_types)
    : names_(std::move(names)), block_(std::move(block_types)), item_(std::move(item_types)) {
  if (block_.size() != names_.size() || item_.size() != names_.size()) {
    throw ConfigError("vocabulary flag vectors do not match names");
  }
  if (names_.size() > 250) throw ConfigError("too many distinct types");
  if (!std::is_sorted(names_.begin(), names_.end()) ||
      std::adjacent_find(names_.begin(), names_.end()) != names_.end()) {
    throw ConfigError("vocabulary names must be sorted and unique");
  }
}

std::shared_ptr<const Vocabulary> Vocabulary::for_task(const TaskSpec& spec,
                                                       const BlockTypeRegistry& registry) {
  std::set<std::string> all{std::string(kGroundType)};
  std::set<std::string> blocks{std::string(kGroundType)};
  std::set<std::string> items;
  for (const auto& b : spec.blocks) all.insert(b.type), blocks.insert(b.type);
  for (const auto& b : spec.goal.blocks) all.insert(b.type), blocks.insert(b.type);
  for (const auto& i : spec.items) all.insert(i.type), items.insert(i.type);
  for (const auto& e : spec.inventory) all.insert(e.type);
  for (const auto& e : spec.goal.inventory) all.insert(e.type);

  std::vector<std::string> names(all.begin(), all.end());
  std::vector<bool> is_block, is_item;
  for (const auto& n : names) {
    is_block.push_back(blocks.count(n) > 0 || registry.placeable(n));
    is_item.push_back(items.count(n) > 0);
  }
  return std::make_shared<const Vocabulary>(std::move(names), std::move(is_block),
                                            std::move(is_item));
}

std::optional<TypeId> Vocabulary::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<TypeId>(it - names_.begin());
}

TypeId Vocabulary::id(std::string_view name) const {
  if (auto t = find(name)) return *t;
  throw BindingError("type '" + std::string(name) + "' is not part of this task");
}

std::vector<TypeId> Vocabulary::block_types() const {
  std::vector<TypeId> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (block_[i]) out.push_back(static_cast<TypeId>(i));
  }
  return out;
}

std::vector<TypeId> Vocabulary::item_types() const {
  std::vector<TypeId> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (item_[i]) out.push_back(static_cast<TypeId>(i));
  }
  return out;
}

WorldState::WorldState(WorldBounds bounds, std::shared_ptr<const Vocabulary> vocabulary,
                       std::int32_t ground_y)
    : bounds_(bounds),
      vocabulary_(std::move(vocabulary)),
      ground_y_(ground_y),
      cells_(bounds.cell_count(), 0),
      inventory_(vocabulary_->size(), 0) {}

void WorldState::set_block(const Position& p, std::optional<TypeId> type) {
  if (!bounds_.contains(p)) throw BuildError("block position " + p.str() + " outside world bounds");
  cells_[bounds_.index(p)] = type ? static_cast<std::uint8_t>(*type + 1) : 0;
}

const ItemStack* WorldState::item_at(const Position& p) const {
  auto it = items_.find(p);
  if (it == items_.end() || !it->second.present) return nullptr;
  return &it->second;
}

void WorldState::add_item(const Position& p, TypeId type, int count) {
  if (!bounds_.contains(p)) throw BuildError("item position " + p.str() + " outside world bounds");
  items_[p] = ItemStack{type, count, true};
}

void WorldState::remove_item(const Position& p) {
  auto it = items_.find(p);
  if (it != items_.end()) it->second.present = false;
}

std::size_t WorldState::count_blocks(TypeId type) const {
  const auto v = static_cast<std::uint8_t>(type + 1);
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), v));
}

std::size_t WorldState::count_present_blocks() const {
  return cells_.size() - static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 0));
}

std::uint64_t WorldState::digest() const {
  Fnv1a h;
  h.bytes(cells_.data(), cells_.size());
  for (const auto& [p, s] : items_) {
    h.i32(p.x), h.i32(p.y), h.i32(p.z);
    h.i32(s.type), h.i32(s.count), h.i32(s.present ? 1 : 0);
  }
  h.i32(agent_.x), h.i32(agent_.y), h.i32(agent_.z), h.i32(alive_ ? 1 : 0);
  for (int c : inventory_) h.i32(c);
  return h.value();
}

std::vector<std::string> WorldState::invariant_violations() const {
  std::vector<std::string> out;
  for (const auto& [p, s] : items_) {
    if (!bounds_.contains(p)) out.push_back("item outside bounds at " + p.str());
    if (s.present && has_block(p)) out.push_back("item and block share " + p.str());
    if (s.count < 1 || s.count > kMaxStack) out.push_back("bad item count at " + p.str());
  }
  if (has_block(agent_)) out.push_back("agent cell holds a block");
  if (has_block(agent_.offset(0, 1, 0))) out.push_back("agent head cell holds a block");
  if (!has_block(agent_.offset(0, -1, 0))) out.push_back("no block below the agent");
  for (std::size_t t = 0; t < inventory_.size(); ++t) {
    if (inventory_[t] < 0 || inventory_[t] > kMaxStack) {
      out.push_back("inventory of " + vocabulary_->name(static_cast<TypeId>(t)) + " out of range");
    }
  }
  return out;
}

bool operator==(const WorldState& a, const WorldState& b) {
  return a.bounds_ == b.bounds_ && a.agent_ == b.agent_ && a.alive_ == b.alive_ &&
         a.inventory_ == b.inventory_ && a.cells_ == b.cells_ && a.items_ == b.items_ &&
         (a.vocabulary_ == b.vocabulary_ || *a.vocabulary_ == *b.vocabulary_);
}

WorldState build_initial_world(const TaskSpec& spec, const BlockTypeRegistry& registry) {
  WorldBounds bounds;
  try {
    bounds = compute_bounds(spec);
  } catch (const ConfigError& e) {
    throw BuildError(e.what());
  }
  WorldState world(bounds, Vocabulary::for_task(spec, registry), spec.ground_y);
  const auto& vocab = world.vocabulary();

  if (spec.ground_y >= bounds.min.y && spec.ground_y <= bounds.max.y) {
    const auto grass = vocab.id(kGroundType);
    for (auto x = bounds.min.x; x <= bounds.max.x; ++x) {
      for (auto z = bounds.min.z; z <= bounds.max.z; ++z) world.set_block({x, spec.ground_y, z}, grass);
    }
  }
  for (const auto& b : spec.blocks) world.set_block(b.position, vocab.id(b.type));
  for (const auto& i : spec.items) {
    if (world.has_block(i.position)) throw BuildError("item coincides with block at " + i.position.str());
    if (i.quantity < 1 || i.quantity > kMaxStack) throw BuildError("item quantity out of range");
    world.add_item(i.position, vocab.id(i.type), i.quantity);
  }
  for (const auto& e : spec.inventory) {
    if (e.quantity < 0 || e.quantity > kMaxStack) throw BuildError("inventory quantity out of range");
    world.set_inventory(vocab.id(e.type), e.quantity);
  }
  world.set_agent(spec.agent_start);
  world.set_agent_alive(true);
  const auto& a = spec.agent_start;
  if (world.has_block(a) || world.has_block(a.offset(0, 1, 0))) {
    throw BuildError("agent start " + a.str() + " is occupied by a block");
  }
  if (!world.has_block(a.offset(0, -1, 0))) throw BuildError("agent start " + a.str() + " has no support");
  return world;
}

CellContent query(const WorldState& world, const Position& pos) {
  if (auto b = world.block_at(pos)) return {CellContent::Kind::Block, world.vocabulary().name(*b), 0};
  if (const auto* item = world.item_at(pos)) {
    return {CellContent::Kind::Item, world.vocabulary().name(item->type), item->count};
  }
  return CellContent::empty();
}

std::int32_t position_object_count(const WorldBounds& bounds) {
  return std::max({bounds.extent_x(), bounds.extent_y() + 2, bounds.extent_z()});
}

TaskStats world_stats(const WorldState& world, const GoalSpec& goal) {
  const auto& vocab = world.vocabulary();
  TaskStats stats;
  stats.goal_predicates = goal.predicate_count();

  const auto ground = vocab.find(kGroundType);
  std::size_t present_blocks = 0;
  world.for_each_block([&](const Position& p, TypeId t) {
    ++present_blocks;
    if (!(p.y == world.ground_y() && ground && t == *ground)) ++stats.initial_objects;
  });

  std::size_t stacks = 0, present_stacks = 0;
  std::vector<std::size_t> item_mass(vocab.size(), 0);
  std::set<int> quantities;
  for (const auto& [p, s] : world.items()) {
    ++stacks;
    quantities.insert(s.count);
    if (s.present) {
      ++present_stacks;
      item_mass[s.type] += static_cast<std::size_t>(s.count);
    }
  }
  stats.initial_objects += present_stacks;

  std::size_t hidden_blocks = 0;
  for (TypeId t : vocab.block_types()) {
    hidden_blocks += static_cast<std::size_t>(world.inventory(t)) + item_mass[t];
  }
  const std::size_t alive = world.agent_alive() ? 1 : 0;

  // numeric: coordinates for every locatable, presence atoms, agent-alive,
  // one inventory fluent per type, one item-count fluent per stack
  stats.init_predicates_num = 3 * (1 + present_blocks + hidden_blocks + stacks) + present_blocks +
                              present_stacks + alive + vocab.size() + stacks;

  // propositional: successor chains, order/addition tables, height guard, positions of
  // placed things, presence atoms, agent facts and one count fact per type
  std::set<int> thresholds;
  for (const auto& e : goal.inventory) thresholds.insert(e.quantity);
  std::size_t geq = 0, add = 0;
  for (int q : thresholds) geq += static_cast<std::size_t>(kMaxStack + 1 - q);
  for (int q : quantities) add += static_cast<std::size_t>(kMaxStack + 1 - q);
  const auto positions = static_cast<std::size_t>(position_object_count(world.bounds()));
  stats.init_predicates_prop = (positions - 1) + kMaxStack + geq + add +
                               static_cast<std::size_t>(world.bounds().extent_y()) +
                               3 * (1 + present_blocks + stacks) + present_blocks + present_stacks +
                               alive + vocab.size() + stacks;
  return stats;
}

nlohmann::json world_snapshot(const WorldState& world) {
  using nlohmann::json;
  auto pos = [](const Position& p) { return json{{"x", p.x}, {"y", p.y}, {"z", p.z}}; };
  const auto& vocab = world.vocabulary();
  json j;
  j["bounds"] = {{"min", pos(world.bounds().min)}, {"max", pos(world.bounds().max)}};
  j["agent"] = pos(world.agent());
  j["agent"]["alive"] = world.agent_alive();
  j["inventory"] = json::object();
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    j["inventory"][vocab.name(static_cast<TypeId>(t))] = world.inventory(static_cast<TypeId>(t));
  }
  j["blocks"] = json::array();
  world.for_each_block([&](const Position& p, TypeId t) {
    j["blocks"].push_back({{"x", p.x}, {"y", p.y}, {"z", p.z}, {"type", vocab.name(t)}});
  });
  j["items"] = json::array();
  for (const auto& [p, s] : world.items()) {
    if (!s.present) continue;
    j["items"].push_back(
        {{"x", p.x}, {"y", p.y}, {"z", p.z}, {"type", vocab.name(s.type)}, {"count", s.count}});
  }
  return j;
}

}  // namespace mineplanner
