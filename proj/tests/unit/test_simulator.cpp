#include <gtest/gtest.h>

#include <random>

#include "mineplanner/error.hpp"
#include "mineplanner/simulator.hpp"
#include "support.hpp"

using namespace mineplanner;

namespace {

WorldState flat(ObservationRange r = {5, 5, 5}) { return build_initial_world(mptest::flat_task(r)); }

TypeId tid(const WorldState& w, const std::string& name) { return w.vocabulary().id(name); }

// Per-type totals across blocks, present items and inventory.
std::vector<long> mass(const WorldState& w) {
  std::vector<long> m(w.vocabulary().size(), 0);
  w.for_each_block([&](const Position&, TypeId t) { ++m[t]; });
  for (const auto& [p, s] : w.items())
    if (s.present) m[s.type] += s.count;
  for (std::size_t t = 0; t < m.size(); ++t) m[t] += w.inventory(static_cast<TypeId>(t));
  return m;
}

}  // namespace

TEST(ActionNames, Grammar) {
  EXPECT_EQ(Action::move(Direction::North).name(), "move-north");
  EXPECT_EQ(Action::brk("grass_block", Direction::North).name(), "break-grass_block-north");
  EXPECT_EQ((Action{Template::MoveAndPickup, Direction::East, "diamond"}).name(), "move_and_pickup-diamond-east");
  EXPECT_EQ(parse_action_name("jumpdown_and_pickup-log-west"),
            (Action{Template::JumpDownAndPickup, Direction::West, "log"}));
  EXPECT_EQ(parse_action_name("CHECKGOAL"), Action::checkgoal());
  EXPECT_THROW(parse_action_name("fly-north"), BindingError);
  EXPECT_THROW(parse_action_name("move-up"), BindingError);
  EXPECT_THROW(parse_action_name("break-north"), BindingError);
  EXPECT_THROW(parse_action_name("move-log-north"), BindingError);
}

TEST(Step, MoveNorth) {
  const auto w = flat();
  const auto out = step(w, Action::move(Direction::North));
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out.world->agent(), (Position{0, 4, -1}));
  EXPECT_EQ(w.agent(), (Position{0, 4, 0}));
}

TEST(Step, BreakGrassAhead) {
  auto t = mptest::flat_task();
  t.blocks = {{{0, 4, -1}, "grass_block"}};
  const auto w = build_initial_world(t);
  EXPECT_EQ(w.inventory(tid(w, "grass_block")), 0);
  const auto out = step(w, Action::brk("grass_block", Direction::North));
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out.world->inventory(tid(w, "grass_block")), 1);
  EXPECT_EQ(query(*out.world, {0, 4, -1}), CellContent::empty());
}

TEST(Step, PlaceThenBreakRestores) {
  auto t = mptest::flat_task();
  t.inventory = {{"log", 3}};
  const auto w = build_initial_world(t);
  const auto placed = step(w, Action::place("log", Direction::North));
  ASSERT_TRUE(placed.ok());
  EXPECT_EQ(query(*placed.world, {0, 4, -1}).type, "log");
  const auto back = step(*placed.world, Action::brk("log", Direction::North));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back.world, w);
  EXPECT_EQ(back.world->digest(), w.digest());
}

TEST(Step, BreakWithoutBlock) {
  const auto w = flat();
  EXPECT_FALSE(applicable(w, Action::brk("grass_block", Direction::North)));
  EXPECT_EQ(rejection(w, Action::brk("grass_block", Direction::North)), reason::kNoBlock);
  EXPECT_EQ(rejection(w, Action::brk("log", Direction::North)), reason::kUnknownType);
}

TEST(Step, RejectionReasons) {
  auto t = mptest::flat_task({7, 7, 7});
  t.blocks = {{{0, 4, -1}, "stone"}, {{1, 5, 0}, "stone"}, {{0, 6, 0}, "stone"}};
  t.items = {{{-1, 4, 0}, "diamond", 1}, {{0, 4, 1}, "flower", 64}};
  t.inventory = {{"flower", 1}, {"stone", 0}};
  const auto w = build_initial_world(t);
  EXPECT_EQ(rejection(w, Action::move(Direction::North)), reason::kBlockedBody);
  EXPECT_EQ(rejection(w, Action::move(Direction::East)), reason::kBlockedHead);
  EXPECT_EQ(rejection(w, Action::move(Direction::West)), reason::kItemInPath);
  EXPECT_EQ(rejection(w, {Template::JumpUp, Direction::North, {}}), reason::kBlockedAbove);
  EXPECT_EQ(rejection(w, {Template::JumpDown, Direction::South, {}}), reason::kNoSupport);
  EXPECT_EQ(rejection(w, {Template::MoveAndPickup, Direction::South, "diamond"}), reason::kNoItem);
  EXPECT_EQ(rejection(w, {Template::MoveAndPickup, Direction::South, "flower"}), reason::kInventoryFull);
  EXPECT_TRUE(applicable(w, {Template::MoveAndPickup, Direction::West, "diamond"}));
  EXPECT_EQ(rejection(w, Action::place("stone", Direction::South)), reason::kInventoryEmpty);
  EXPECT_EQ(rejection(w, Action::place("grass_block", Direction::South)), reason::kInventoryEmpty);
  EXPECT_EQ(rejection(w, Action::move(Direction::South)), reason::kItemInPath);
}

TEST(Step, PlaceRequiresSupportAndSpace) {
  auto t = mptest::flat_task();
  t.blocks = {{{0, 3, -1}, "log"}};
  t.inventory = {{"stone", 2}};
  t.items = {{{1, 4, 0}, "diamond", 1}};
  auto w = build_initial_world(t);
  w.set_block({0, 3, -1}, std::nullopt);
  EXPECT_EQ(rejection(w, Action::place("stone", Direction::North)), reason::kNoSupport);
  EXPECT_EQ(rejection(w, Action::place("stone", Direction::East)), reason::kItemInPath);
  w.set_block({0, 4, 1}, tid(w, "log"));
  EXPECT_EQ(rejection(w, Action::place("stone", Direction::South)), reason::kOccupied);
  w.set_agent({2, 4, 0});
  EXPECT_EQ(rejection(w, Action::place("stone", Direction::East)), reason::kOutOfBounds);
}

TEST(Step, ItemOnTopBlocksBreak) {
  auto t = mptest::flat_task();
  t.blocks = {{{0, 4, -1}, "log"}};
  t.items = {{{0, 5, -1}, "diamond", 1}};
  const auto w = build_initial_world(t);
  EXPECT_EQ(rejection(w, Action::brk("log", Direction::North)), reason::kItemOnTop);
}

TEST(Step, JumpUpAndDown) {
  auto t = mptest::flat_task({5, 7, 5});
  t.blocks = {{{0, 4, -1}, "stone"}};
  const auto w = build_initial_world(t);
  const auto up = step(w, {Template::JumpUp, Direction::North, {}});
  ASSERT_TRUE(up.ok());
  EXPECT_EQ(up.world->agent(), (Position{0, 5, -1}));
  const auto down = step(*up.world, {Template::JumpDown, Direction::North, {}});
  ASSERT_TRUE(down.ok());
  EXPECT_EQ(down.world->agent(), (Position{0, 4, -2}));
}

TEST(Step, PickupAddsStack) {
  auto t = mptest::flat_task();
  t.items = {{{0, 4, -1}, "diamond", 3}};
  const auto w = build_initial_world(t);
  const auto out = step(w, {Template::MoveAndPickup, Direction::North, "diamond"});
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out.world->inventory(tid(w, "diamond")), 3);
  EXPECT_EQ(out.world->item_at({0, 4, -1}), nullptr);
  EXPECT_EQ(out.world->agent(), (Position{0, 4, -1}));
}

TEST(Enumerate, EmptyFlatWorld) {
  const auto acts = enumerate_applicable(flat());
  ASSERT_EQ(acts.size(), 4u);
  for (const auto& a : acts) EXPECT_EQ(a.tmpl, Template::Move);
}

TEST(Enumerate, BoxedIn) {
  auto t = mptest::flat_task({5, 7, 5});
  for (Direction d : kDirections) {
    const auto dd = delta(d);
    t.blocks.push_back({{dd.dx, 4, dd.dz}, "stone"});
    t.blocks.push_back({{dd.dx, 5, dd.dz}, "stone"});
  }
  const auto acts = enumerate_applicable(build_initial_world(t));
  ASSERT_EQ(acts.size(), 4u);
  for (const auto& a : acts) {
    EXPECT_EQ(a.tmpl, Template::Break);
    EXPECT_EQ(a.subject, "stone");
  }
}

TEST(Enumerate, DeadAgent) {
  auto w = flat();
  w.set_agent_alive(false);
  EXPECT_TRUE(enumerate_applicable(w).empty());
  EXPECT_EQ(rejection(w, Action::move(Direction::North)), reason::kAgentDead);
}

TEST(Enumerate, AgreesWithBruteForce) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const auto t = mptest::random_small_task(rng);
    const auto w = build_initial_world(t);
    std::vector<Action> brute;
    for (const auto& a : action_catalog(w.vocabulary()))
      if (a.tmpl != Template::CheckGoal && step(w, a).ok()) brute.push_back(a);
    std::sort(brute.begin(), brute.end());
    EXPECT_EQ(enumerate_applicable(w), brute);
  }
}

TEST(RunPlan, StraightCorridor) {
  auto t = mptest::flat_task({13, 9, 13});
  t.goal.agent_at = Position{0, 4, -5};
  const auto w = build_initial_world(t);
  const std::vector<Action> plan(5, Action::move(Direction::North));
  const auto r = run_plan(w, plan, t.goal);
  EXPECT_TRUE(r.verified());
  EXPECT_EQ(r.plan_length, 5u);
}

TEST(RunPlan, FailingThirdStep) {
  auto t = mptest::flat_task({13, 9, 13});
  t.blocks = {{{0, 4, -3}, "stone"}, {{0, 5, -3}, "stone"}};
  t.goal.agent_at = Position{0, 4, -5};
  const auto w = build_initial_world(t);
  const std::vector<Action> plan(5, Action::move(Direction::North));
  const auto r = run_plan(w, plan, t.goal);
  EXPECT_FALSE(r.verified());
  ASSERT_TRUE(r.failing_step.has_value());
  EXPECT_EQ(*r.failing_step, 3u);
  EXPECT_EQ(r.failure_reason, reason::kBlockedBody);
  EXPECT_FALSE(r.goal_satisfied);
}

TEST(RunPlan, EmptyPlanOnSatisfiedGoal) {
  const auto t = mptest::flat_task();
  const auto r = run_plan(build_initial_world(t), {}, t.goal);
  EXPECT_TRUE(r.verified());
  EXPECT_EQ(r.plan_length, 0u);
}

TEST(RunPlan, CheckgoalStep) {
  auto t = mptest::flat_task();
  t.goal.agent_at = Position{0, 4, -1};
  const auto w = build_initial_world(t);
  auto r = run_plan(w, {Action::checkgoal()}, t.goal);
  EXPECT_EQ(r.failing_step, 1u);
  EXPECT_EQ(r.failure_reason, reason::kGoalUnmet);
  r = run_plan(w, {Action::move(Direction::North), Action::checkgoal()}, t.goal);
  EXPECT_TRUE(r.verified());
  EXPECT_EQ(r.plan_length, 1u);
}

TEST(Goal, ExampleTask) {
  const auto t = load_task(mptest::data_path("tasks/example.yaml"));
  auto w = build_initial_world(t);
  EXPECT_FALSE(goal_satisfied(w, t.goal));
  w.set_agent({6, 4, -5});
  w.set_block({0, 4, -2}, tid(w, "log"));
  w.set_inventory(tid(w, "log"), 63);
  EXPECT_TRUE(goal_satisfied(w, t.goal));
  const auto checks = goal_checklist(w, t.goal);
  ASSERT_EQ(checks.size(), 3u);
  for (const auto& c : checks) EXPECT_TRUE(c.met) << c.description;
  w.set_inventory(tid(w, "log"), 0);
  EXPECT_FALSE(goal_satisfied(w, t.goal));
}

TEST(Goal, TypeExact) {
  auto t = mptest::flat_task();
  t.goal = {};
  t.goal.blocks = {{{0, 4, -1}, "log"}};
  t.blocks = {{{0, 4, -1}, "planks"}};
  EXPECT_FALSE(goal_satisfied(build_initial_world(t), t.goal));
}

TEST(Properties, ConservationSupportAndCap) {
  std::mt19937_64 rng(2024);
  for (int world = 0; world < 100; ++world) {
    const auto t = mptest::random_small_task(rng);
    auto w = build_initial_world(t);
    const auto start = mass(w);
    const auto catalog = action_catalog(w.vocabulary());
    for (int seq = 0; seq < 100; ++seq) {
      auto cur = w;
      for (int k = 0; k < 20; ++k) {
        const auto& a = catalog[rng() % catalog.size()];
        auto out = step(cur, a);
        if (!out.ok()) continue;
        cur = std::move(*out.world);
        ASSERT_EQ(mass(cur), start) << a.name();
        ASSERT_TRUE(cur.has_block(cur.agent().offset(0, -1, 0))) << a.name();
        ASSERT_FALSE(cur.has_block(cur.agent()));
        for (int n : cur.inventory_counts()) ASSERT_LE(n, kMaxStack);
        ASSERT_TRUE(cur.invariant_violations().empty());
      }
    }
  }
}
