#include <gtest/gtest.h>

#include "mineplanner/codegen.hpp"
#include "mineplanner/error.hpp"
#include "mineplanner/pddl.hpp"
#include "support.hpp"

using namespace mineplanner;
using namespace mineplanner::pddl;

namespace {

Domain tiny_domain() {
  Domain d;
  d.name = "tiny";
  d.requirements = {"typing", "numeric-fluents"};
  d.types = {{"agent", "object"}, {"block", "object"}, {"stone-block", "block"}};
  d.predicates = {{"present", {{"?b", "block"}}}, {"alive", {{"?a", "agent"}}}};
  d.functions = {{"x", {{"?o", "object"}}}};
  pddl::Action a;
  a.name = "poke";
  a.parameters = {{"?a", "agent"}, {"?b", "stone-block"}};
  a.precondition = Condition::conjunction(
      {Condition::atom("alive", {"?a"}), Condition::atom("present", {"?b"}),
       Condition::compare(CompareOp::Eq, NumTerm::fluent("x", {"?b"}),
                          NumTerm::sum(NumTerm::fluent("x", {"?a"}), NumTerm::constant(-1)))});
  a.effects = {Effect::del("present", {"?b"}), Effect::increase("x", {"?a"}, NumTerm::constant(1))};
  d.actions.push_back(a);
  return d;
}

bool balanced(const std::string& text) {
  int depth = 0;
  for (const auto& t : tokenize(text)) {
    if (t == "(") ++depth;
    if (t == ")" && --depth < 0) return false;
  }
  return depth == 0;
}

}  // namespace

TEST(PddlPrint, Terms) {
  EXPECT_EQ(print_term(NumTerm::sum(NumTerm::fluent("y", {"?ag"}), NumTerm::constant(-1))), "(+ (y ?ag) -1)");
  EXPECT_EQ(print_term(NumTerm::product(NumTerm::constant(2), NumTerm::constant(3))), "(* 2 3)");
}

TEST(PddlPrint, Conditions) {
  const auto c = Condition::exists(
      {{"?b", "block"}},
      Condition::conjunction({Condition::atom("block-present", {"?b"}),
                              Condition::negation(Condition::atom("item-present", {"?i"}))}));
  EXPECT_EQ(print_condition(c), "(exists (?b - block) (and (block-present ?b) (not (item-present ?i))))");
  EXPECT_EQ(print_condition(Condition::compare(CompareOp::Ge, NumTerm::fluent("n", {"ag0"}), NumTerm::constant(3))),
            "(>= (n ag0) 3)");
  EXPECT_EQ(print_condition(Condition::disjunction({Condition::atom("p", {}), Condition::atom("q", {})})),
            "(or (p) (q))");
}

TEST(PddlPrint, Effects) {
  EXPECT_EQ(print_effect(Effect::add("p", {"?a"})), "(p ?a)");
  EXPECT_EQ(print_effect(Effect::del("p", {"?a"})), "(not (p ?a))");
  EXPECT_EQ(print_effect(Effect::decrease("z", {"?ag"}, NumTerm::constant(1))), "(decrease (z ?ag) 1)");
  EXPECT_EQ(print_effect(Effect::assign("z", {"?ag"}, NumTerm::constant(0))), "(assign (z ?ag) 0)");
}

TEST(PddlPrint, DomainSections) {
  const auto d = tiny_domain();
  EXPECT_NO_THROW(check_domain(d));
  const auto text = print_domain(d);
  EXPECT_TRUE(balanced(text));
  EXPECT_NE(text.find("(define (domain tiny)"), std::string::npos);
  EXPECT_NE(text.find("(:requirements :typing :numeric-fluents)"), std::string::npos);
  EXPECT_NE(text.find("stone-block - block"), std::string::npos);
  EXPECT_NE(text.find("(:action poke"), std::string::npos);
  EXPECT_EQ(text, print_domain(tiny_domain()));
}

TEST(PddlPrint, ProblemComments) {
  Problem p;
  p.name = "t";
  p.domain_name = "tiny";
  p.comments = {"hello"};
  p.objects = {{"ag0", "agent"}};
  p.init = {{"alive", {"ag0"}, std::nullopt}, {"x", {"ag0"}, 4}};
  p.goal = Condition::atom("alive", {"ag0"});
  const auto text = print_problem(p);
  EXPECT_EQ(text.rfind("; hello", 0), 0u);
  EXPECT_NE(text.find("(= (x ag0) 4)"), std::string::npos);
  EXPECT_NE(text.find("(:goal (alive ag0))"), std::string::npos);
  EXPECT_TRUE(balanced(text));
  EXPECT_NO_THROW(check_problem(tiny_domain(), p));
}

TEST(PddlCheck, UndeclaredPredicate) {
  auto d = tiny_domain();
  d.actions[0].effects.push_back(Effect::add("ghost", {"?a"}));
  EXPECT_THROW(check_domain(d), EmissionError);
}

TEST(PddlCheck, ArityMismatch) {
  auto d = tiny_domain();
  d.actions[0].effects.push_back(Effect::add("present", {"?a", "?b"}));
  EXPECT_THROW(check_domain(d), EmissionError);
}

TEST(PddlCheck, UnboundVariable) {
  auto d = tiny_domain();
  d.actions[0].effects.push_back(Effect::add("present", {"?c"}));
  EXPECT_THROW(check_domain(d), EmissionError);
}

TEST(PddlCheck, UndeclaredType) {
  auto d = tiny_domain();
  d.actions[0].parameters.push_back({"?q", "ghost-type"});
  EXPECT_THROW(check_domain(d), EmissionError);
}

TEST(PddlCheck, ProblemObjects) {
  Problem p;
  p.name = "t";
  p.domain_name = "tiny";
  p.init = {{"alive", {"ag0"}, std::nullopt}};
  p.goal = Condition::conjunction({});
  EXPECT_THROW(check_problem(tiny_domain(), p), EmissionError);
  p.objects = {{"ag0", "agent"}, {"ag0", "agent"}};
  EXPECT_THROW(check_problem(tiny_domain(), p), EmissionError);
}

TEST(PddlTypes, Subtypes) {
  const auto d = tiny_domain();
  EXPECT_TRUE(d.is_subtype("stone-block", "block"));
  EXPECT_TRUE(d.is_subtype("stone-block", "object"));
  EXPECT_FALSE(d.is_subtype("block", "stone-block"));
  EXPECT_FALSE(d.is_subtype("agent", "block"));
}

TEST(PddlTokenize, CommentsAndParens) {
  const auto t = tokenize("(a b) ; c d\n(e)");
  EXPECT_EQ(t, (std::vector<std::string>{"(", "a", "b", ")", "(", "e", ")"}));
}

TEST(PddlGenerated, WellFormedAndDeterministic) {
  const auto spec = load_task(mptest::data_path("tasks/example.yaml"));
  const auto w = build_initial_world(spec);
  for (auto enc : {EncodingKind::Numeric, EncodingKind::Propositional}) {
    const auto c = compile_task(w, spec.goal, enc, "example");
    EXPECT_NO_THROW(check_domain(c.domain));
    EXPECT_NO_THROW(check_problem(c.domain, c.problem));
    const auto dt = print_domain(c.domain);
    const auto pt = print_problem(c.problem);
    EXPECT_TRUE(balanced(dt));
    EXPECT_TRUE(balanced(pt));
    const auto again = compile_task(build_initial_world(spec), spec.goal, enc, "example");
    EXPECT_EQ(dt, print_domain(again.domain));
    EXPECT_EQ(pt, print_problem(again.problem));
  }
}
