#include "support.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "mineplanner/simulator.hpp"
#include "mineplanner/subprocess.hpp"

namespace fs = std::filesystem;
using namespace mineplanner;

namespace mptest {

fs::path data_path(const std::string& rel) { return fs::path(MINEPLANNER_TEST_DATA) / rel; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::vector<std::string> tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ';') {
      flush();
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(' || c == ')') {
      flush();
      out.emplace_back(1, c);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

std::map<std::string, int> token_multiset(const std::string& text) {
  std::map<std::string, int> m;
  for (const auto& t : tokens(text)) ++m[t];
  return m;
}

TaskSpec flat_task(ObservationRange range) {
  TaskSpec t;
  t.name = "flat";
  t.observation_range = range;
  t.goal.agent_at = Position{0, 4, 0};
  return t;
}

TaskSpec random_small_task(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  static const std::vector<std::string> kBlockTypes = {"stone", "log", "planks", "dirt"};
  static const std::vector<std::string> kItemTypes = {"diamond", "log", "flower"};
  for (;;) {
    TaskSpec t;
    t.name = "random";
    const int ex = 2 * pick(1, 2) + 1, ey = 2 * pick(1, 2) + 1, ez = 2 * pick(1, 2) + 1;
    t.observation_range = {ex, std::max(ey, 3), ez};
    const auto b = compute_bounds(t);
    std::set<Position> used;
    used.insert(t.agent_start);
    used.insert(t.agent_start.offset(0, 1, 0));
    auto random_cell = [&] {
      return Position{pick(b.min.x, b.max.x), pick(t.ground_y + 1, b.max.y), pick(b.min.z, b.max.z)};
    };
    const int nblock_types = pick(0, 2);
    std::vector<std::string> types(kBlockTypes.begin(), kBlockTypes.end());
    std::shuffle(types.begin(), types.end(), rng);
    types.resize(static_cast<std::size_t>(nblock_types));
    for (const auto& type : types) {
      const int n = pick(1, 3);
      for (int k = 0; k < n; ++k) {
        const auto p = random_cell();
        if (used.insert(p).second) t.blocks.push_back({p, type});
      }
    }
    const int nitems = pick(0, 2);
    for (int k = 0; k < nitems; ++k) {
      const auto p = random_cell();
      if (!used.insert(p).second) continue;
      t.items.push_back({p, kItemTypes[rng() % kItemTypes.size()], pick(1, 3) == 3 ? 64 : pick(1, 2)});
    }
    if (pick(0, 1)) t.inventory.push_back({types.empty() ? "grass_block" : types.front(), pick(0, 1) ? 64 : pick(1, 3)});
    switch (pick(0, 2)) {
      case 0: t.goal.agent_at = Position{pick(b.min.x, b.max.x), 4, pick(b.min.z, b.max.z)}; break;
      case 1: t.goal.blocks.push_back({Position{pick(b.min.x, b.max.x), 4, pick(b.min.z, b.max.z)},
                                       types.empty() ? "grass_block" : types.back()}); break;
      default: t.goal.inventory.push_back({"grass_block", pick(1, 2)}); break;
    }
    if (validate_task(t).valid()) return t;
  }
}

namespace {

bool dls(const WorldState& w, const GoalSpec& goal, std::size_t depth) {
  if (goal_satisfied(w, goal)) return true;
  if (depth == 0) return false;
  for (const auto& a : enumerate_applicable(w)) {
    auto out = step(w, a);
    if (out.ok() && dls(*out.world, goal, depth - 1)) return true;
  }
  return false;
}

}  // namespace

std::optional<std::size_t> iddfs_length(const WorldState& world, const GoalSpec& goal, std::size_t max_depth) {
  for (std::size_t d = 0; d <= max_depth; ++d)
    if (dls(world, goal, d)) return d;
  return std::nullopt;
}

std::size_t reachable_states(const WorldState& world, std::size_t cap) {
  std::unordered_set<std::uint64_t> seen{world.digest()};
  std::vector<WorldState> frontier{world};
  while (!frontier.empty() && seen.size() < cap) {
    std::vector<WorldState> next;
    for (const auto& w : frontier)
      for (const auto& a : enumerate_applicable(w)) {
        auto out = step(w, a);
        if (out.ok() && seen.insert(out.world->digest()).second) next.push_back(std::move(*out.world));
      }
    frontier = std::move(next);
  }
  return seen.size();
}

TempDir::TempDir() : path_(make_work_dir("mineplanner-test")) {}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

fs::path write_script(const fs::path& dir, const std::string& name, const std::string& body) {
  const auto p = dir / name;
  write_file(p, "#!/bin/sh\n" + body);
  fs::permissions(p, fs::perms::owner_all | fs::perms::group_read | fs::perms::group_exec, fs::perm_options::replace);
  return p;
}

}  // namespace mptest
