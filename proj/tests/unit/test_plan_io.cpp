#include <gtest/gtest.h>

#include "mineplanner/codegen.hpp"
#include "mineplanner/error.hpp"
#include "mineplanner/plan_io.hpp"
#include "mineplanner/simulator.hpp"
#include "support.hpp"

using namespace mineplanner;

TEST(ParsePlan, MinimalFd) {
  const auto p = parse_plan("(move-north ag0)\n; cost = 1 (unit cost)\n", PlanDialect::FdSasPlan);
  ASSERT_EQ(p.actions.size(), 1u);
  EXPECT_EQ(p.actions[0], Action::move(Direction::North));
  EXPECT_EQ(p.cost, 1);
}

TEST(ParsePlan, MinimalEnhsp) {
  const auto p = parse_plan("0: (move-north ag0)\n", PlanDialect::Enhsp);
  ASSERT_EQ(p.actions.size(), 1u);
  EXPECT_EQ(p.actions[0], Action::move(Direction::North));
}

TEST(ParsePlan, DialectFixturesAgree) {
  const auto fd = parse_plan(mptest::read_file(mptest::data_path("plans/sample.fd")), PlanDialect::FdSasPlan);
  const auto en = parse_plan(mptest::read_file(mptest::data_path("plans/sample.enhsp")), PlanDialect::Enhsp);
  EXPECT_EQ(fd.actions, en.actions);
  ASSERT_EQ(fd.actions.size(), 4u);
  EXPECT_EQ(fd.actions[2], Action::brk("grass_block", Direction::East));
  EXPECT_EQ(fd.actions[3], Action::checkgoal());
  EXPECT_EQ(fd.cost, 4);
}

TEST(ParsePlan, CaseFoldingAndBlankLines) {
  const auto p = parse_plan("\n  (MOVE-North AG0)\r\n\n", PlanDialect::Canonical);
  ASSERT_EQ(p.actions.size(), 1u);
  EXPECT_EQ(p.actions[0], Action::move(Direction::North));
}

TEST(ParsePlan, ErrorsCarryLineNumbers) {
  try {
    parse_plan("(move-north ag0)\nmove-north\n", PlanDialect::FdSasPlan);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    parse_plan("(move-north ag0)\n(fly-north ag0)\n", PlanDialect::Canonical);
    FAIL();
  } catch (const BindingError& e) {
    EXPECT_NE(std::string(e.what()).find("fly-north"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(BindAction, Names) {
  EXPECT_EQ(bind_action("break-grass_block-north"), Action::brk("grass_block", Direction::North));
  EXPECT_EQ(bind_action("move_and_pickup-diamond-east"),
            (Action{Template::MoveAndPickup, Direction::East, "diamond"}));
  EXPECT_THROW(bind_action("fly-north"), BindingError);
}

TEST(BindAction, PropositionalArgumentsAreChecked) {
  auto t = mptest::flat_task({13, 13, 13});
  const auto w = build_initial_world(t);
  const auto d = gen_domain(w, t.goal, EncodingKind::Propositional);
  const BindContext ctx{&d};
  const auto p = parse_plan("(move-north ag0 position6 position7 position6 position5 position6 position5)\n",
                            PlanDialect::FdSasPlan, ctx);
  ASSERT_EQ(p.actions.size(), 1u);
  EXPECT_EQ(p.actions[0], Action::move(Direction::North));
  EXPECT_TRUE(step(w, p.actions[0]).ok());
  EXPECT_THROW(parse_plan("(move-north ag0 position6 position7 position6 position5 position6 position4)\n",
                          PlanDialect::FdSasPlan, ctx),
               BindingError);
  EXPECT_THROW(parse_plan("(move-north ag0 position6)\n", PlanDialect::FdSasPlan, ctx), BindingError);
  EXPECT_THROW(bind_action("move_and_pickup-diamond-east", {}, ctx), BindingError);
}

TEST(BindAction, NumericArgumentCount) {
  const auto t = mptest::flat_task();
  const auto w = build_initial_world(t);
  const auto d = gen_domain(w, t.goal, EncodingKind::Numeric);
  const BindContext ctx{&d};
  EXPECT_EQ(bind_action("break-grass_block-north", {"ag0", "grass_block-b3"}, ctx),
            Action::brk("grass_block", Direction::North));
  EXPECT_THROW(bind_action("move-north", {"ag1"}, ctx), BindingError);
}

TEST(RoundTrip, EveryCatalogName) {
  auto t = mptest::flat_task();
  t.blocks = {{{1, 4, 1}, "stone"}, {{-1, 4, 1}, "log"}};
  t.items = {{{-1, 4, -1}, "diamond", 1}, {{1, 4, -1}, "flower", 2}};
  const auto w = build_initial_world(t);
  const auto d = gen_domain(w, t.goal, EncodingKind::Numeric);
  Plan plan;
  plan.actions = action_catalog(w.vocabulary());
  const auto text = serialize_plan(plan);
  for (auto dialect : {PlanDialect::Canonical, PlanDialect::FdSasPlan}) {
    const auto back = parse_plan(text, dialect, BindContext{&d});
    EXPECT_EQ(back.actions, plan.actions);
  }
  for (const auto& a : plan.actions) EXPECT_EQ(bind_action(a.name()), a);
}

TEST(Serialize, CommentsTrail) {
  Plan p;
  p.actions = {Action::move(Direction::South)};
  p.comments = {"goal-satisfied: true"};
  EXPECT_EQ(serialize_plan(p), "(move-south ag0)\n; goal-satisfied: true\n");
  EXPECT_EQ(serialize_plan(Plan{}), "");
}

TEST(Dialects, Names) {
  EXPECT_EQ(parse_dialect("fd"), PlanDialect::FdSasPlan);
  EXPECT_EQ(parse_dialect("enhsp"), PlanDialect::Enhsp);
  EXPECT_EQ(parse_dialect("canonical"), PlanDialect::Canonical);
  EXPECT_FALSE(parse_dialect("val").has_value());
}
