#include "mineplanner/suite.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "mineplanner/codegen.hpp"
#include "mineplanner/error.hpp"

namespace mineplanner {

namespace fs = std::filesystem;

std::string_view to_string(Difficulty d) {
  switch (d) {
    case Difficulty::Easy: return "easy";
    case Difficulty::Medium: return "medium";
    case Difficulty::Hard: return "hard";
  }
  return "?";
}

std::optional<Difficulty> parse_difficulty(std::string_view s) {
  for (auto d : kDifficulties)
    if (to_string(d) == s) return d;
  return std::nullopt;
}

std::string_view to_string(SuiteScale s) { return s == SuiteScale::Desk ? "desk" : "full"; }

std::optional<SuiteScale> parse_scale(std::string_view s) {
  if (s == "desk") return SuiteScale::Desk;
  if (s == "full") return SuiteScale::Full;
  return std::nullopt;
}

std::optional<TableFormat> parse_table_format(std::string_view s) {
  if (s == "markdown" || s == "md") return TableFormat::Markdown;
  if (s == "csv") return TableFormat::Csv;
  return std::nullopt;
}

const std::vector<FamilyInfo>& task_families() {
  static const std::vector<FamilyInfo> families = [] {
    const ObservationRange e{13, 9, 13}, m{21, 15, 21}, h{71, 31, 71};
    std::vector<FamilyInfo> f = {
        {"move", "Reach a target location.", {1, 1, 1}, {e, m, h}},
        {"pickup_diamond", "Pick up a diamond.", {1, 1, 1}, {e, m, h}},
        {"gather_wood", "Pick up a log.", {1, 1, 1}, {e, m, h}},
        {"place_wood", "Place a log at a target location.", {2, 2, 2}, {e, m, h}},
        {"pickup_and_place", "Collect a block and place it at a target location.", {1, 1, 1}, {e, m, h}},
        {"gather_multi_wood", "Collect several logs.", {1, 1, 1}, {e, m, h}},
        {"climb", "Climb a staircase and place a log on top.", {1, 1, 1}, {e, m, h}},
        {"cut_tree", "Break a tree trunk and collect its logs.", {1, 1, 1},
         {ObservationRange{21, 31, 21}, ObservationRange{41, 31, 41}, ObservationRange{65, 31, 65}}},
        {"build_bridge", "Fill a channel with logs.", {2, 4, 6}, {e, m, h}},
        {"build_cross", "Collect blocks to build a cross.", {5, 5, 5}, {e, m, h}},
        {"build_wall", "Collect blocks to build a wall.", {9, 9, 9}, {e, m, h}},
        {"build_well", "Collect blocks to build a well.", {26, 26, 26}, {e, m, h}},
        {"build_shape", "Build a shape from inventory blocks.", {5, 9, 27}, {e, m, h}},
        {"collect_and_build_shape", "Collect blocks to build a shape.", {5, 11, 27}, {e, m, h}},
        {"build_cabin", "Build a log cabin with a plank roof.", {116, 116, 116},
         {ObservationRange{21, 11, 21}, ObservationRange{41, 11, 41}, ObservationRange{65, 11, 65}}},
    };
    return f;
  }();
  return families;
}

const FamilyInfo& task_family(std::string_view name) {
  for (const auto& f : task_families())
    if (f.name == name) return f;
  throw NotFoundError("unknown task family '" + std::string(name) + "'");
}

ObservationRange suite_range(const FamilyInfo& family, Difficulty d, SuiteScale scale) {
  const auto idx = static_cast<std::size_t>(d);
  if (scale == SuiteScale::Full || d == Difficulty::Easy) return family.full_ranges[idx];
  return d == Difficulty::Medium ? ObservationRange{15, 11, 15} : ObservationRange{21, 15, 21};
}

namespace {

// Fixed-width draws so the suite is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix(std::uint64_t seed, std::string_view family, Difficulty d) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (char c : family) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  h = (h ^ static_cast<std::uint64_t>(d)) * 1099511628211ull;
  return h;
}

class Builder {
 public:
  Builder(std::string name, ObservationRange range) {
    spec_.name = std::move(name);
    spec_.observation_range = range;
    bounds_ = compute_bounds(spec_);
    surface_ = spec_.ground_y;
  }

  const WorldBounds& bounds() const { return bounds_; }
  int ground() const { return surface_; }

  void block(Position p, const std::string& t) {
    if (used_.insert(p).second) spec_.blocks.push_back({p, t});
  }
  void item(Position p, const std::string& t, int q = 1) {
    if (used_.insert(p).second) spec_.items.push_back({p, t, q});
  }
  void inventory(const std::string& t, int q) { spec_.inventory.push_back({t, q}); }
  void goal_block(Position p, const std::string& t) {
    spec_.goal.blocks.push_back({p, t});
    reserved_.insert(p);
  }
  void goal_agent(Position p) {
    spec_.goal.agent_at = p;
    reserved_.insert(p);
    reserved_.insert(p.offset(0, 1, 0));
  }
  void goal_inventory(const std::string& t, int q) { spec_.goal.inventory.push_back({t, q}); }
  // Cells near the task that decoration must leave alone.
  void reserve(Position p) { reserved_.insert(p); }
  /// Lowers the ground layer by one and covers it with grass everywhere except where
  /// `keep_open` holds, leaving a one-deep channel with a floor.
  template <typename Pred>
  void raised_terrain(Pred keep_open) {
    const int surface = spec_.ground_y;
    spec_.ground_y = surface - 1;
    for (int x = bounds_.min.x; x <= bounds_.max.x; ++x)
      for (int z = bounds_.min.z; z <= bounds_.max.z; ++z) {
        if (keep_open(x, z)) {
          channel_.insert({x, surface, z});
        } else {
          spec_.blocks.push_back({{x, surface, z}, std::string(kGroundType)});
        }
      }
    surface_ = surface;
  }

  /// Clear columns: every (x, z) within `margin` of a task position.
  bool near_task(int x, int z, int margin) const {
    auto near = [&](const Position& p) {
      return std::abs(p.x - x) <= margin && std::abs(p.z - z) <= margin;
    };
    if (near(spec_.agent_start)) return true;
    for (const auto& p : used_)
      if (near(p)) return true;
    for (const auto& p : reserved_)
      if (near(p)) return true;
    for (const auto& p : channel_)
      if (near(p)) return true;
    return false;
  }

  bool free_column(int x, int z) const {
    for (int y = ground() + 1; y <= bounds_.max.y; ++y)
      if (used_.count({x, y, z})) return false;
    return !channel_.count({x, ground(), z});
  }

  void clutter(Rng& rng, int count) {
    static const std::vector<std::string> kinds = {"stone", "dirt", "flower", "cobblestone"};
    int attempts = count * 20;
    while (count > 0 && attempts-- > 0) {
      const int x = rng.between(bounds_.min.x, bounds_.max.x);
      const int z = rng.between(bounds_.min.z, bounds_.max.z);
      if (near_task(x, z, 1) || !free_column(x, z)) continue;
      block({x, ground() + 1, z}, kinds[static_cast<std::size_t>(rng.below(static_cast<int>(kinds.size())))]);
      --count;
    }
  }

  bool area_free(int x0, int z0, int x1, int z1) const {
    if (x0 < bounds_.min.x || z0 < bounds_.min.z || x1 > bounds_.max.x || z1 > bounds_.max.z) return false;
    for (int x = x0; x <= x1; ++x)
      for (int z = z0; z <= z1; ++z)
        if (near_task(x, z, 2) || !free_column(x, z)) return false;
    return true;
  }

  void tree(int x, int z, int height) {
    const int top = std::min(ground() + height, bounds_.max.y - 1);
    for (int y = ground() + 1; y <= top; ++y) block({x, y, z}, "log");
    for (int dx = -1; dx <= 1; ++dx)
      for (int dz = -1; dz <= 1; ++dz)
        if (bounds_.contains({x + dx, top + 1, z + dz})) block({x + dx, top + 1, z + dz}, "leaves");
  }

  // Hollow 5x5 hut with a door gap on its south face.
  void hut(int x0, int z0) {
    const int y0 = ground() + 1;
    const int roof = std::min(y0 + 3, bounds_.max.y);
    for (int x = x0; x < x0 + 5; ++x)
      for (int z = z0; z < z0 + 5; ++z) {
        const bool edge = x == x0 || x == x0 + 4 || z == z0 || z == z0 + 4;
        for (int y = y0; y < roof; ++y) {
          if (!edge) continue;
          if (z == z0 + 4 && x == x0 + 2 && y < y0 + 2) continue;
          block({x, y, z}, "planks");
        }
        block({x, roof, z}, "cobblestone");
      }
  }

  void village(Rng& rng) {
    const long area = static_cast<long>(bounds_.extent_x()) * bounds_.extent_z();
    int huts = static_cast<int>(std::max(1L, area / 400));
    int trees = static_cast<int>(std::max(3L, area / 120));
    int attempts = (huts + trees) * 40;
    while ((huts > 0 || trees > 0) && attempts-- > 0) {
      const int x = rng.between(bounds_.min.x, bounds_.max.x);
      const int z = rng.between(bounds_.min.z, bounds_.max.z);
      if (huts > 0 && area_free(x - 1, z - 1, x + 5, z + 5)) {
        hut(x, z);
        --huts;
      } else if (trees > 0 && area_free(x - 1, z - 1, x + 1, z + 1)) {
        tree(x, z, rng.between(3, 5));
        --trees;
      }
    }
  }

  TaskSpec finish(Rng& rng, Difficulty d) {
    const long area = static_cast<long>(bounds_.extent_x()) * bounds_.extent_z();
    if (d == Difficulty::Hard) village(rng);
    if (d != Difficulty::Easy) clutter(rng, static_cast<int>(area / (d == Difficulty::Medium ? 24 : 16)));
    std::sort(spec_.blocks.begin(), spec_.blocks.end(),
              [](const auto& a, const auto& b) { return a.position < b.position; });
    return std::move(spec_);
  }

 private:
  TaskSpec spec_;
  WorldBounds bounds_;
  std::set<Position> used_;
  std::set<Position> reserved_;
  std::set<Position> channel_;
  int surface_ = 3;
};

}  // namespace

namespace {

using Layout = void (*)(Builder&, int);  // level: 0 easy, 1 medium, 2 hard

void move_task(Builder& b, int level) {
  static const Position goals[] = {{0, 4, -5}, {4, 4, -6}, {-8, 4, 9}};
  b.goal_agent(goals[level]);
}

void pickup_diamond(Builder& b, int level) {
  static const Position at[] = {{0, 4, -3}, {5, 4, -4}, {-7, 4, 8}};
  b.item(at[level], "diamond");
  b.goal_inventory("diamond", 1);
}

void gather_wood(Builder& b, int level) {
  static const Position at[] = {{2, 4, -1}, {-4, 4, 3}, {8, 4, -6}};
  b.item(at[level], "log");
  b.goal_inventory("log", 1);
}

void place_wood(Builder& b, int level) {
  static const Position stand[] = {{0, 4, -3}, {3, 4, -5}, {-6, 4, 8}};
  b.inventory("log", 1);
  b.goal_agent(stand[level]);
  b.goal_block(stand[level].offset(0, 0, -1), "log");
}

void pickup_and_place(Builder& b, int level) {
  static const Position from[] = {{3, 4, 0}, {-5, 4, 2}, {8, 4, 7}};
  static const Position to[] = {{0, 4, -3}, {4, 4, -5}, {-7, 4, -8}};
  b.item(from[level], "planks");
  b.goal_block(to[level], "planks");
}

void gather_multi_wood(Builder& b, int level) {
  static const Position at[3][3] = {{{2, 4, -2}, {-3, 4, 1}, {1, 4, 3}},
                                    {{5, 4, -4}, {-6, 4, 2}, {2, 4, 6}},
                                    {{9, 4, -8}, {-8, 4, -3}, {3, 4, 9}}};
  for (const auto& p : at[level]) b.item(p, "log");
  b.goal_inventory("log", 3);
}

// Two-wide stairs of heights 1..3 north of the agent, then a pillar to place on.
void climb(Builder& b, int) {
  for (int x = 0; x <= 1; ++x) {
    for (int step = 1; step <= 3; ++step)
      for (int h = 0; h < step; ++h) b.block({x, 4 + h, -step}, "stone");
    for (int h = 0; h < 3; ++h) b.block({x, 4 + h, -4}, "stone");
  }
  b.inventory("log", 1);
  b.goal_block({0, 7, -4}, "log");
}

void cut_tree(Builder& b, int level) {
  const int trunk = 2 + level;
  const int top = 4 + trunk - 1;
  for (int y = 4; y <= top; ++y) b.block({0, y, -2}, "log");
  b.block({0, top + 1, -2}, "leaves");
  b.block({-1, top + 1, -2}, "leaves");
  b.block({1, top + 1, -2}, "leaves");
  b.block({0, top + 1, -3}, "leaves");
  b.block({0, top + 2, -2}, "leaves");
  b.inventory("dirt", trunk - 1);
  b.goal_inventory("log", trunk);
}

void build_bridge(Builder& b, int level) {
  const int span = 2 * (level + 1);
  b.raised_terrain([](int, int z) { return z == -2; });
  b.inventory("log", span);
  for (int x = 0; x < span; ++x) b.goal_block({x - level, 3, -2}, "log");
}

void structure(Builder& b, const std::vector<Position>& cells, const std::string& type, int prebuilt,
               const std::vector<Position>& item_spots) {
  // cells[0..prebuilt) stand already; the rest arrive as item stacks.
  for (std::size_t i = 0; i < cells.size(); ++i) {
    b.goal_block(cells[i], type);
    if (static_cast<int>(i) < prebuilt) b.block(cells[i], type);
  }
  int missing = static_cast<int>(cells.size()) - prebuilt;
  for (std::size_t i = 0; missing > 0 && i < item_spots.size(); ++i) {
    const int share = i + 1 == item_spots.size()
                          ? missing
                          : std::max(1, missing / static_cast<int>(item_spots.size() - i));
    const int q = std::min({share, missing, kMaxStack});
    b.item(item_spots[i], type, q);
    missing -= q;
  }
}

void build_cross(Builder& b, int level) {
  // Missing arm last so the near cell is the one to fill.
  const std::vector<Position> cells = {{0, 4, -3}, {-1, 4, -3}, {1, 4, -3}, {0, 4, -4}, {0, 4, -2}};
  static const int prebuilt[] = {4, 2, 0};
  structure(b, cells, "stone", prebuilt[level], {{2, 4, 0}, {-3, 4, 1}, {3, 4, -5}});
}

void build_wall(Builder& b, int level) {
  std::vector<Position> cells;
  for (int x = -4; x <= 4; ++x)
    if (x != 0) cells.push_back({x, 4, -3});
  cells.push_back({0, 4, -3});
  static const int prebuilt[] = {8, 5, 0};
  structure(b, cells, "cobblestone", prebuilt[level], {{-2, 4, 1}, {3, 4, 2}});
}

void build_well(Builder& b, int level) {
  std::vector<Position> cells;
  for (int y = 4; y <= 5; ++y)
    for (int x = -1; x <= 1; ++x)
      for (int z = -5; z <= -3; ++z)
        if ((x != 0 || z != -4) && !(y == 4 && x == 0 && z == -3)) cells.push_back({x, y, z});
  for (int x : {-1, 1})
    for (int z : {-5, -3}) cells.push_back({x, 6, z});
  for (int x = -1; x <= 1; ++x)
    for (int z : {-5, -3}) cells.push_back({x, 7, z});
  cells.push_back({0, 4, -3});
  static const int prebuilt[] = {25, 20, 0};
  structure(b, cells, "cobblestone", prebuilt[level], {{1, 4, 0}, {-3, 4, 2}});
}

void build_shape(Builder& b, int level) {
  std::vector<Position> cells;
  int prebuilt = 0;
  if (level == 0) {
    cells = {{-1, 4, -3}, {1, 4, -3}, {0, 4, -4}, {0, 4, -3}, {0, 4, -2}};
    prebuilt = 3;
  } else {
    const int height = level == 1 ? 1 : 3;
    for (int y = 4; y < 4 + height; ++y)
      for (int x = -1; x <= 1; ++x)
        for (int z = -5; z <= -3; ++z) cells.push_back({x, y, z});
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    b.goal_block(cells[i], "planks");
    if (static_cast<int>(i) < prebuilt) b.block(cells[i], "planks");
  }
  b.inventory("planks", static_cast<int>(cells.size()) - prebuilt);
}

void collect_and_build_shape(Builder& b, int level) {
  std::vector<Position> cells;
  int prebuilt = 0;
  if (level == 0) {
    cells = {{-1, 4, -4}, {0, 4, -4}, {1, 4, -4}, {0, 4, -3}, {0, 4, -2}};
    prebuilt = 3;
  } else if (level == 1) {
    for (int x = -2; x <= 2; ++x) cells.push_back({x, 4, -5});
    for (int z = -4; z <= -2; ++z) cells.push_back({0, 4, z});
    for (int y = 5; y <= 7; ++y) cells.push_back({0, y, -5});
  } else {
    for (int y = 4; y <= 6; ++y)
      for (int x = -1; x <= 1; ++x)
        for (int z = -5; z <= -3; ++z) cells.push_back({x, y, z});
  }
  structure(b, cells, "bricks", prebuilt, {{2, 4, 0}, {-2, 4, -1}, {3, 4, 3}});
}

void build_cabin(Builder& b, int level) {
  // 6x6 footprint, four log courses, plank roof.
  std::vector<Position> walls, roof;
  for (int y = 4; y <= 7; ++y)
    for (int x = -3; x <= 2; ++x)
      for (int z = -7; z <= -2; ++z)
        if ((x == -3 || x == 2 || z == -7 || z == -2) && !(y == 4 && x == 0 && z == -2))
          walls.push_back({x, y, z});
  walls.push_back({0, 4, -2});
  for (int x = -3; x <= 2; ++x)
    for (int z = -7; z <= -2; ++z) roof.push_back({x, 8, z});
  if (level == 0) {
    structure(b, walls, "log", static_cast<int>(walls.size()) - 1, {});
    structure(b, roof, "planks", static_cast<int>(roof.size()), {});
    b.inventory("log", 1);
  } else if (level == 1) {
    structure(b, walls, "log", static_cast<int>(walls.size()), {});
    structure(b, roof, "planks", 0, {});
    b.inventory("planks", static_cast<int>(roof.size()));
  } else {
    structure(b, walls, "log", 0, {{4, 4, 0}, {-5, 4, 1}});
    structure(b, roof, "planks", 0, {{5, 4, 3}});
  }
}

const std::vector<std::pair<std::string_view, Layout>>& layouts() {
  static const std::vector<std::pair<std::string_view, Layout>> l = {
      {"move", move_task},
      {"pickup_diamond", pickup_diamond},
      {"gather_wood", gather_wood},
      {"place_wood", place_wood},
      {"pickup_and_place", pickup_and_place},
      {"gather_multi_wood", gather_multi_wood},
      {"climb", climb},
      {"cut_tree", cut_tree},
      {"build_bridge", build_bridge},
      {"build_cross", build_cross},
      {"build_wall", build_wall},
      {"build_well", build_well},
      {"build_shape", build_shape},
      {"collect_and_build_shape", collect_and_build_shape},
      {"build_cabin", build_cabin},
  };
  return l;
}

}  // namespace

TaskSpec generate_task(std::string_view family, Difficulty d, SuiteScale scale, std::uint64_t seed,
                       std::optional<ObservationRange> range) {
  const auto& info = task_family(family);
  const auto it = std::find_if(layouts().begin(), layouts().end(),
                               [&](const auto& p) { return p.first == family; });
  Builder b(info.name + "-" + std::string(to_string(d)), range.value_or(suite_range(info, d, scale)));
  it->second(b, static_cast<int>(d));
  Rng rng(mix(seed, family, d));
  return b.finish(rng, d);
}

namespace {

std::string range_text(const ObservationRange& r) {
  return "(" + std::to_string(r.x) + ", " + std::to_string(r.y) + ", " + std::to_string(r.z) + ")";
}

}  // namespace

SuiteManifest generate_suite(const fs::path& out_dir, std::uint64_t seed, SuiteScale scale,
                             const SuiteOptions& options) {
  SuiteManifest manifest;
  manifest.seed = seed;
  manifest.scale = scale;
  fs::create_directories(out_dir);
  for (const auto& family : task_families()) {
    for (auto d : kDifficulties) {
      const TaskSpec spec = generate_task(family.name, d, scale, seed);
      const auto rel = fs::path(family.name) / std::string(to_string(d));
      const auto dir = out_dir / rel;
      fs::create_directories(dir);
      {
        std::ofstream out(dir / "task.yaml", std::ios::binary);
        out << serialize_task(spec);
        if (!out) throw BuildError("cannot write " + (dir / "task.yaml").string());
      }
      const WorldState world = build_initial_world(spec);
      if (options.write_pddl) write_pddl_files(dir, pddl_identifier(spec.name), world, spec.goal);

      ManifestRow row;
      row.family = family.name;
      row.difficulty = d;
      row.range = spec.observation_range;
      row.stats = world_stats(world, spec.goal);
      row.task_path = (rel / "task.yaml").generic_string();
      if (options.solve_easy && d == Difficulty::Easy) {
        const auto result = bfs_solve(world, spec.goal, options.limits);
        if (result.solved()) row.oracle_length = result.plan.size();
      }
      manifest.rows.push_back(std::move(row));
    }
  }
  {
    std::ofstream out(out_dir / "manifest.json", std::ios::binary);
    out << manifest_json(manifest).dump(2) << "\n";
  }
  {
    std::ofstream out(out_dir / "manifest.md", std::ios::binary);
    out << manifest_table(manifest, TableFormat::Markdown);
  }
  return manifest;
}

std::string manifest_table(const SuiteManifest& manifest, TableFormat format) {
  std::ostringstream os;
  const bool md = format == TableFormat::Markdown;
  const char* sep = md ? " | " : ",";
  auto row_out = [&](const std::vector<std::string>& cells) {
    if (md) os << "| ";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << sep;
      const bool quote = !md && cells[i].find(',') != std::string::npos;
      os << (quote ? "\"" + cells[i] + "\"" : cells[i]);
    }
    if (md) os << " |";
    os << "\n";
  };
  row_out({"family", "variant", "range", "objects", "init_prop", "init_num", "goal", "oracle_len"});
  if (md) os << "|---|---|---|---:|---:|---:|---:|---:|\n";
  for (const auto& r : manifest.rows) {
    row_out({r.family, std::string(to_string(r.difficulty)), range_text(r.range),
             std::to_string(r.stats.initial_objects), std::to_string(r.stats.init_predicates_prop),
             std::to_string(r.stats.init_predicates_num), std::to_string(r.stats.goal_predicates),
             r.oracle_length ? std::to_string(*r.oracle_length) : "-"});
  }
  return os.str();
}

nlohmann::json manifest_json(const SuiteManifest& manifest) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : manifest.rows) {
    nlohmann::json j = {
        {"family", r.family},
        {"variant", to_string(r.difficulty)},
        {"observation_range", {r.range.x, r.range.y, r.range.z}},
        {"initial_objects", r.stats.initial_objects},
        {"init_predicates_prop", r.stats.init_predicates_prop},
        {"init_predicates_num", r.stats.init_predicates_num},
        {"goal_predicates", r.stats.goal_predicates},
        {"task", r.task_path},
    };
    j["oracle_length"] = r.oracle_length ? nlohmann::json(*r.oracle_length) : nlohmann::json(nullptr);
    rows.push_back(std::move(j));
  }
  return {{"seed", manifest.seed}, {"scale", to_string(manifest.scale)}, {"tasks", rows}};
}

SuiteManifest manifest_from_json(const nlohmann::json& j) {
  SuiteManifest m;
  try {
    m.seed = j.at("seed").get<std::uint64_t>();
    const auto scale = parse_scale(j.at("scale").get<std::string>());
    if (!scale) throw SchemaError("manifest: unknown scale");
    m.scale = *scale;
    for (const auto& t : j.at("tasks")) {
      ManifestRow r;
      r.family = t.at("family").get<std::string>();
      const auto d = parse_difficulty(t.at("variant").get<std::string>());
      if (!d) throw SchemaError("manifest: unknown variant");
      r.difficulty = *d;
      const auto& range = t.at("observation_range");
      r.range = {range.at(0).get<int>(), range.at(1).get<int>(), range.at(2).get<int>()};
      r.stats.initial_objects = t.at("initial_objects").get<std::size_t>();
      r.stats.init_predicates_prop = t.at("init_predicates_prop").get<std::size_t>();
      r.stats.init_predicates_num = t.at("init_predicates_num").get<std::size_t>();
      r.stats.goal_predicates = t.at("goal_predicates").get<std::size_t>();
      r.task_path = t.at("task").get<std::string>();
      if (!t.at("oracle_length").is_null()) r.oracle_length = t.at("oracle_length").get<std::size_t>();
      m.rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("manifest: ") + e.what());
  }
  return m;
}

}  // namespace mineplanner
