#include <gtest/gtest.h>

#include "mineplanner/codegen.hpp"
#include "mineplanner/error.hpp"
#include "mineplanner/pddl_eval.hpp"
#include "support.hpp"

using namespace mineplanner;
using namespace mineplanner::pddl;

namespace {

std::size_t schema_index(const Domain& d, const std::string& name) {
  for (std::size_t i = 0; i < d.actions.size(); ++i)
    if (d.actions[i].name == name) return i;
  throw std::runtime_error("no action " + name);
}

struct Fixture {
  WorldState world;
  GoalSpec goal;
  explicit Fixture(TaskSpec t) : world(build_initial_world(t)), goal(t.goal) {}
};

std::unique_ptr<GroundContext> context(const Fixture& f, EncodingKind enc) {
  auto c = compile_task(f.world, f.goal, enc);
  return std::make_unique<GroundContext>(std::move(c.domain), std::move(c.problem));
}

}  // namespace

TEST(Grounding, NumericMoveHasOneBinding) {
  Fixture f(mptest::flat_task({3, 5, 3}));
  const auto ctx = context(f, EncodingKind::Numeric);
  const auto mv = schema_index(ctx->domain(), "move-north");
  std::size_t n = 0;
  for (const auto& g : ground_actions(*ctx, 1'000'000)) n += g.schema == mv;
  EXPECT_EQ(n, 1u);
}

TEST(Grounding, PropositionalMoveIsBoundedByPositionsToTheSixth) {
  Fixture f(mptest::flat_task({3, 5, 3}));
  auto c = compile_task(f.world, f.goal, EncodingKind::Propositional);
  const auto keep = c.domain.actions[schema_index(c.domain, "move-north")];
  c.domain.actions = {keep};
  GroundContext ctx(std::move(c.domain), std::move(c.problem));
  const std::size_t p = static_cast<std::size_t>(position_object_count(f.world.bounds()));
  EXPECT_EQ(p, 7u);
  const auto all = ground_actions(ctx, 1'000'000);
  EXPECT_LE(all.size(), p * p * p * p * p * p);
  EXPECT_EQ(all.size(), p * p * p * p * p * p);
}

TEST(Grounding, CapIsEnforced) {
  Fixture f(mptest::flat_task({3, 5, 3}));
  const auto ctx = context(f, EncodingKind::Propositional);
  EXPECT_THROW(ground_actions(*ctx, 1000), GroundingLimitError);
}

TEST(Grounding, NoObjectsMeansNoBindings) {
  Domain d;
  d.name = "d";
  d.types = {{"thing", "object"}};
  d.predicates = {{"p", {{"?t", "thing"}}}};
  pddl::Action a;
  a.name = "touch";
  a.parameters = {{"?t", "thing"}};
  a.precondition = Condition::atom("p", {"?t"});
  a.effects = {Effect::del("p", {"?t"})};
  d.actions = {a};
  Problem p;
  p.name = "p";
  p.domain_name = "d";
  p.goal = Condition::conjunction({});
  GroundContext ctx(d, p);
  EXPECT_TRUE(ground_actions(ctx, 10).empty());
  EXPECT_TRUE(applicable_actions(ctx, ctx.initial_state()).empty());
}

TEST(Evaluator, HoldsOnInitialState) {
  Fixture f(mptest::flat_task({3, 5, 3}));
  const auto ctx = context(f, EncodingKind::Numeric);
  const auto s = ctx->initial_state();
  EXPECT_TRUE(holds(*ctx, Condition::atom("agent-alive", {"ag0"}), s));
  EXPECT_TRUE(holds(*ctx, Condition::compare(CompareOp::Eq, NumTerm::fluent("y", {"ag0"}), NumTerm::constant(4)), s));
  EXPECT_FALSE(holds(*ctx, Condition::atom("goal-achieved", {"ag0"}), s));
  const auto below = Condition::exists(
      {{"?b", "block"}},
      Condition::conjunction({Condition::atom("block-present", {"?b"}),
                              Condition::compare(CompareOp::Eq, NumTerm::fluent("y", {"?b"}),
                                                 NumTerm::sum(NumTerm::fluent("y", {"?ag"}), NumTerm::constant(-1)))}));
  EXPECT_TRUE(holds(*ctx, below, s, {{"?ag", "ag0"}}));
  EXPECT_THROW(holds(*ctx, below, s), EvaluationError);
  EXPECT_TRUE(holds(*ctx, Condition::disjunction({Condition::atom("goal-achieved", {"ag0"}),
                                                  Condition::atom("agent-alive", {"ag0"})}),
                    s));
}

TEST(Evaluator, ApplyNumericMove) {
  Fixture f(mptest::flat_task({3, 5, 3}));
  const auto ctx = context(f, EncodingKind::Numeric);
  const auto s = ctx->initial_state();
  const GroundAction mv{schema_index(ctx->domain(), "move-north"), {*ctx->find_object("ag0")}};
  ASSERT_TRUE(is_applicable(*ctx, mv, s));
  const auto next = apply(*ctx, mv, s);
  EXPECT_EQ(next.fluents.at(ctx->fluent_key("z", {"ag0"})), -1);
  EXPECT_EQ(next.fluents.at(ctx->fluent_key("x", {"ag0"})), 0);
  EXPECT_EQ(s.fluents.at(ctx->fluent_key("z", {"ag0"})), 0);
  EXPECT_EQ(ctx->action_str(mv), "(move-north ag0)");
}

TEST(Evaluator, ApplyPropositionalMove) {
  Fixture f(mptest::flat_task({3, 5, 3}));
  const auto ctx = context(f, EncodingKind::Propositional);
  const auto s = ctx->initial_state();
  const auto mv = schema_index(ctx->domain(), "move-north");
  const auto groundings = applicable_groundings(*ctx, mv, s);
  ASSERT_EQ(groundings.size(), 1u);
  const auto next = apply(*ctx, groundings[0], s);
  const auto w = decode_state(*ctx, next, EncodingKind::Propositional, f.world);
  EXPECT_EQ(w.agent(), (Position{0, 4, -1}));
}

TEST(Evaluator, InapplicableActionIsAContractViolation) {
  Fixture f(mptest::flat_task({3, 5, 3}));
  const auto ctx = context(f, EncodingKind::Numeric);
  const auto s = ctx->initial_state();
  const GroundAction brk{schema_index(ctx->domain(), "break-grass_block-north"),
                         {*ctx->find_object("ag0"), *ctx->find_object("grass_block-b0")}};
  EXPECT_FALSE(is_applicable(*ctx, brk, s));
  EXPECT_THROW(apply(*ctx, brk, s), ContractViolation);
}

TEST(Evaluator, ApplicableMatchesSingleSchemaQueries) {
  Fixture f(mptest::flat_task({3, 5, 3}));
  const auto ctx = context(f, EncodingKind::Numeric);
  const auto s = ctx->initial_state();
  std::vector<GroundAction> joined;
  for (std::size_t i = 0; i < ctx->domain().actions.size(); ++i) {
    const auto part = applicable_groundings(*ctx, i, s);
    joined.insert(joined.end(), part.begin(), part.end());
  }
  EXPECT_EQ(joined, applicable_actions(*ctx, s));
  for (const auto& a : joined) EXPECT_TRUE(is_applicable(*ctx, a, s));
}
