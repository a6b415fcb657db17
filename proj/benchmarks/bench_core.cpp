#include <benchmark/benchmark.h>

#include "mineplanner/codegen.hpp"
#include "mineplanner/pddl_eval.hpp"
#include "mineplanner/search.hpp"
#include "mineplanner/simulator.hpp"
#include "mineplanner/suite.hpp"

using namespace mineplanner;

namespace {

TaskSpec flat(std::int32_t side) {
  TaskSpec t;
  t.name = "bench";
  t.observation_range = {side, 9, side};
  t.goal.agent_at = Position{0, 4, -(side / 2)};
  return t;
}

void BM_EnumerateApplicable(benchmark::State& state) {
  const auto t = generate_task("build_wall", Difficulty::Medium, SuiteScale::Desk, 1);
  const auto w = build_initial_world(t);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_applicable(w));
}
BENCHMARK(BM_EnumerateApplicable);

void BM_Step(benchmark::State& state) {
  const auto w = build_initial_world(flat(13));
  const auto a = Action::move(Direction::North);
  for (auto _ : state) benchmark::DoNotOptimize(step(w, a));
}
BENCHMARK(BM_Step);

void BM_Digest(benchmark::State& state) {
  const auto w = build_initial_world(flat(static_cast<std::int32_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(w.digest());
}
BENCHMARK(BM_Digest)->Arg(13)->Arg(29);

void BM_BfsCorridor(benchmark::State& state) {
  const auto t = flat(static_cast<std::int32_t>(state.range(0)));
  const auto w = build_initial_world(t);
  for (auto _ : state) benchmark::DoNotOptimize(bfs_solve(w, t.goal));
}
BENCHMARK(BM_BfsCorridor)->Arg(9)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_EasySuiteTask(benchmark::State& state) {
  const auto t = generate_task("pickup_and_place", Difficulty::Easy, SuiteScale::Desk, 1);
  const auto w = build_initial_world(t);
  for (auto _ : state) benchmark::DoNotOptimize(bfs_solve(w, t.goal));
}
BENCHMARK(BM_EasySuiteTask)->Unit(benchmark::kMillisecond);

void BM_PrintProblem(benchmark::State& state) {
  const auto enc = state.range(1) ? EncodingKind::Propositional : EncodingKind::Numeric;
  const auto t = flat(static_cast<std::int32_t>(state.range(0)));
  const auto w = build_initial_world(t);
  for (auto _ : state) benchmark::DoNotOptimize(pddl::print_problem(gen_problem(w, t.goal, enc)));
}
BENCHMARK(BM_PrintProblem)->Args({13, 0})->Args({13, 1})->Args({37, 0})->Args({37, 1})->Unit(benchmark::kMillisecond);

void BM_GroundApplicable(benchmark::State& state) {
  const auto enc = state.range(0) ? EncodingKind::Propositional : EncodingKind::Numeric;
  const auto t = flat(5);
  const auto w = build_initial_world(t);
  auto c = compile_task(w, t.goal, enc);
  pddl::GroundContext ctx(std::move(c.domain), std::move(c.problem));
  const auto s = ctx.initial_state();
  for (auto _ : state) benchmark::DoNotOptimize(pddl::applicable_actions(ctx, s));
}
BENCHMARK(BM_GroundApplicable)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
