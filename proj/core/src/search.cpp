#include "mineplanner/search.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "mineplanner/error.hpp"
#include "mineplanner/pddl_eval.hpp"
#include "mineplanner/simulator.hpp"

namespace mineplanner {

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Solved: return "solved";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::LimitReached: return "limit-reached";
  }
  return "?";
}

std::size_t goal_distance_bound(const WorldState& w, const GoalSpec& goal) {
  const auto& vocab = w.vocabulary();
  std::size_t cells = 0;
  for (const auto& b : goal.blocks) {
    const auto t = vocab.find(b.type);
    if (!t || w.block_at(b.position) != t) ++cells;
  }
  std::size_t moves = 0;
  if (goal.agent_at) {
    const auto& a = w.agent();
    const auto& g = *goal.agent_at;
    const auto flat = static_cast<std::size_t>(std::abs(a.x - g.x) + std::abs(a.z - g.z));
    moves = std::max(flat, static_cast<std::size_t>(std::abs(a.y - g.y)));
  }
  std::size_t deficit = 0;
  for (const auto& e : goal.inventory) {
    const auto t = vocab.find(e.type);
    if (!t || w.inventory(*t) < e.quantity) ++deficit;
  }
  // Places are the only steps that satisfy goal cells; moves and collecting steps
  // overlap (pickups are moves), hence the max.
  return cells + std::max(moves, deficit);
}

namespace {

// Goals no sequence of steps can reach, independent of layout.
std::optional<std::string> trivially_unreachable(const WorldState& w, const GoalSpec& goal) {
  const auto& b = w.bounds();
  for (const auto& gb : goal.blocks) {
    if (!b.contains(gb.position)) return "goal block " + gb.position.str() + " lies outside the world";
    const auto t = w.vocabulary().find(gb.type);
    if (!t || !w.vocabulary().is_block_type(*t)) return "goal block type " + gb.type + " cannot exist";
  }
  if (goal.agent_at) {
    const auto& p = *goal.agent_at;
    if (p.x < b.min.x || p.x > b.max.x || p.z < b.min.z || p.z > b.max.z || p.y <= b.min.y || p.y > b.max.y + 1) {
      return "goal agent position " + p.str() + " cannot be stood on";
    }
  }
  for (const auto& e : goal.inventory) {
    if (!w.vocabulary().find(e.type)) return "goal inventory type " + e.type + " cannot be collected";
  }
  return std::nullopt;
}

struct Node {
  WorldState world;
  std::int64_t parent;
  Action action;
  std::size_t g;
};

}  // namespace

SearchResult bfs_solve(const WorldState& start, const GoalSpec& goal, const SearchLimits& limits) {
  SearchResult r;
  if (goal_satisfied(start, goal)) {
    r.status = SearchStatus::Solved;
    return r;
  }
  if (auto why = trivially_unreachable(start, goal)) {
    r.status = SearchStatus::Exhausted;
    r.detail = *why;
    return r;
  }
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(limits.wall_seconds));

  std::vector<Node> nodes;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  // (f, -g, insertion) ascending: deeper nodes first among equal f, FIFO otherwise
  using Key = std::tuple<std::size_t, std::int64_t, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> open;

  auto h = [&](const WorldState& w) { return limits.use_heuristic ? goal_distance_bound(w, goal) : 0; };
  auto known = [&](const WorldState& w, std::uint64_t d) {
    auto it = seen.find(d);
    if (it == seen.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(), [&](std::size_t i) { return nodes[i].world == w; });
  };

  nodes.push_back({start, -1, Action::checkgoal(), 0});
  seen[start.digest()].push_back(0);
  open.emplace(h(start), 0, 0);
  ++r.generated;

  while (!open.empty()) {
    const auto idx = std::get<2>(open.top());
    open.pop();
    if (goal_satisfied(nodes[idx].world, goal)) {
      for (auto i = static_cast<std::int64_t>(idx); nodes[static_cast<std::size_t>(i)].parent >= 0;
           i = nodes[static_cast<std::size_t>(i)].parent) {
        r.plan.push_back(nodes[static_cast<std::size_t>(i)].action);
      }
      std::reverse(r.plan.begin(), r.plan.end());
      r.status = SearchStatus::Solved;
      return r;
    }
    if (r.expanded >= limits.max_expanded) {
      r.status = SearchStatus::LimitReached;
      r.detail = "expansion limit " + std::to_string(limits.max_expanded);
      return r;
    }
    if ((r.expanded & 255) == 0 && std::chrono::steady_clock::now() > deadline) {
      r.status = SearchStatus::LimitReached;
      r.detail = "wall-clock limit";
      return r;
    }
    ++r.expanded;
    const std::size_t g = nodes[idx].g;
    if (g >= limits.max_depth) {
      r.detail = "depth limit " + std::to_string(limits.max_depth);
      continue;
    }
    for (const auto& a : enumerate_applicable(nodes[idx].world)) {
      WorldState next = nodes[idx].world;
      apply_unchecked(next, a);
      const auto d = next.digest();
      if (known(next, d)) continue;
      ++r.generated;
      const auto f = g + 1 + h(next);
      nodes.push_back({std::move(next), static_cast<std::int64_t>(idx), a, g + 1});
      seen[d].push_back(nodes.size() - 1);
      open.emplace(f, -static_cast<std::int64_t>(g + 1), nodes.size() - 1);
    }
  }
  r.status = r.detail.empty() ? SearchStatus::Exhausted : SearchStatus::LimitReached;
  if (r.detail.empty()) r.detail = "reachable state space exhausted";
  return r;
}

std::string EquivalenceReport::str() const {
  std::ostringstream os;
  os << states_compared << " states compared, " << mismatches.size() << " mismatches";
  for (std::size_t i = 0; i < mismatches.size() && i < 10; ++i) {
    const auto& m = mismatches[i];
    os << "\n  [" << std::hex << m.digest << std::dec << "] " << m.side << " " << m.action;
    if (!m.detail.empty()) os << ": " << m.detail;
  }
  return os.str();
}

namespace {

class WorldSet {
 public:
  bool insert(const WorldState& w) {
    auto& bucket = map_[w.digest()];
    for (const auto& x : bucket) {
      if (x == w) return false;
    }
    bucket.push_back(w);
    return true;
  }

 private:
  std::unordered_map<std::uint64_t, std::vector<WorldState>> map_;
};

std::unique_ptr<pddl::GroundContext> make_context(const WorldState& w, const GoalSpec& goal, EncodingKind enc,
                                                  const DomainMutator& mutate) {
  auto task = compile_task(w, goal, enc);
  if (mutate) mutate(task.domain);
  return std::make_unique<pddl::GroundContext>(std::move(task.domain), std::move(task.problem));
}

std::size_t checkgoal_index(const pddl::GroundContext& ctx) {
  const auto& acts = ctx.domain().actions;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    if (acts[i].name == "checkgoal") return i;
  }
  throw EmissionError("domain has no checkgoal action");
}

// Applicable groundings grouped by action name; checkgoal included.
std::map<std::string, std::vector<pddl::GroundAction>> by_name(const pddl::GroundContext& ctx,
                                                               const pddl::GroundState& s) {
  std::map<std::string, std::vector<pddl::GroundAction>> out;
  for (auto& g : pddl::applicable_actions(ctx, s)) out[ctx.action_name(g)].push_back(std::move(g));
  return out;
}

}  // namespace

EquivalenceReport check_sim_vs_pddl(const WorldState& world, const GoalSpec& goal, EncodingKind enc,
                                    std::size_t depth, const DomainMutator& mutate) {
  EquivalenceReport rep;
  const auto ctx = make_context(world, goal, enc, mutate);
  const auto cg = checkgoal_index(*ctx);
  (void)cg;
  std::deque<std::pair<WorldState, std::size_t>> queue;
  WorldSet seen;
  seen.insert(world);
  queue.emplace_back(world, 0);
  auto report = [&](const WorldState& w, std::string side, std::string action, std::string detail = {}) {
    rep.mismatches.push_back({w.digest(), std::move(side), std::move(action), std::move(detail)});
  };

  while (!queue.empty()) {
    auto [w, d] = std::move(queue.front());
    queue.pop_front();
    ++rep.states_compared;
    const auto state = ctx->state_from(gen_problem(w, goal, enc));
    if (decode_state(*ctx, state, enc, w) != w) report(w, "encoding", "-", "decode(encode(world)) differs");

    std::map<std::string, Action> sim;
    for (const auto& a : enumerate_applicable(w)) sim.emplace(a.name(), a);
    auto pddl_side = by_name(*ctx, state);

    const bool goal_sim = goal_satisfied(w, goal);
    const bool goal_pddl = pddl_side.count("checkgoal") != 0;
    if (goal_sim != goal_pddl) {
      report(w, goal_sim ? "simulator-only" : "pddl-only", "checkgoal");
    }
    pddl_side.erase("checkgoal");
    for (const auto& [name, a] : sim) {
      if (!pddl_side.count(name)) report(w, "simulator-only", name);
    }
    for (const auto& [name, gs] : pddl_side) {
      auto it = sim.find(name);
      if (it == sim.end()) {
        report(w, "pddl-only", name);
        continue;
      }
      const auto expected = step(w, it->second);
      for (const auto& g : gs) {
        WorldState got = decode_state(*ctx, pddl::apply(*ctx, g, state), enc, w);
        if (got != *expected.world) {
          report(w, "successor", name, ctx->action_str(g));
          break;
        }
      }
    }
    if (d >= depth) continue;
    for (const auto& [name, a] : sim) {
      auto next = step(w, a);
      if (seen.insert(*next.world)) queue.emplace_back(std::move(*next.world), d + 1);
    }
  }
  return rep;
}

EquivalenceReport check_encoding_bisimulation(const WorldState& world, const GoalSpec& goal, std::size_t depth,
                                              const DomainMutator& mutate_numeric,
                                              const DomainMutator& mutate_prop) {
  EquivalenceReport rep;
  const auto num = make_context(world, goal, EncodingKind::Numeric, mutate_numeric);
  const auto prop = make_context(world, goal, EncodingKind::Propositional, mutate_prop);

  struct Pair {
    pddl::GroundState n, p;
    WorldState w;
    std::size_t depth;
  };
  std::deque<Pair> queue;
  WorldSet seen;
  {
    auto n0 = num->initial_state();
    auto p0 = prop->initial_state();
    auto wn = decode_state(*num, n0, EncodingKind::Numeric, world);
    auto wp = decode_state(*prop, p0, EncodingKind::Propositional, world);
    if (wn != wp) rep.mismatches.push_back({world.digest(), "initial", "-", "initial states decode differently"});
    seen.insert(wn);
    queue.push_back({std::move(n0), std::move(p0), std::move(wn), 0});
  }
  auto report = [&](const WorldState& w, std::string side, std::string action, std::string detail = {}) {
    rep.mismatches.push_back({w.digest(), std::move(side), std::move(action), std::move(detail)});
  };

  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    ++rep.states_compared;
    const auto an = by_name(*num, cur.n);
    const auto ap = by_name(*prop, cur.p);
    for (const auto& [name, gs] : an) {
      if (!ap.count(name)) report(cur.w, "numeric-only", name);
    }
    for (const auto& [name, gs] : ap) {
      if (!an.count(name)) report(cur.w, "propositional-only", name);
    }
    for (const auto& [name, gn] : an) {
      auto it = ap.find(name);
      if (it == ap.end() || name == "checkgoal") continue;
      std::optional<WorldState> ref;
      std::optional<pddl::GroundState> ns, ps;
      bool bad = false;
      for (const auto& g : gn) {
        auto s = pddl::apply(*num, g, cur.n);
        auto w = decode_state(*num, s, EncodingKind::Numeric, world);
        if (!ref) {
          ref = std::move(w);
          ns = std::move(s);
        } else if (w != *ref) {
          bad = true;
        }
      }
      for (const auto& g : it->second) {
        auto s = pddl::apply(*prop, g, cur.p);
        auto w = decode_state(*prop, s, EncodingKind::Propositional, world);
        if (w != *ref) {
          bad = true;
        } else if (!ps) {
          ps = std::move(s);
        }
      }
      if (bad || !ps) {
        report(cur.w, "successor", name, "successor worlds differ");
        continue;
      }
      if (cur.depth < depth && seen.insert(*ref)) {
        queue.push_back({std::move(*ns), std::move(*ps), std::move(*ref), cur.depth + 1});
      }
    }
  }
  return rep;
}

}  // namespace mineplanner
