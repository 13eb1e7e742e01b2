#include <benchmark/benchmark.h>

#include "provel/behaviour.hpp"
#include "provel/families.hpp"

namespace {

using namespace provel;

const char* kExampleTBox =
    "B & C <= D : u\n"
    "top <= B : v\n"
    "A <= C : w\n"
    "A <= ex R : x\n"
    "ex R . B <= B : y\n";

void BM_SaturateSword(benchmark::State& state) {
  AnnotatedTBox tbox = sword_tbox(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    BehaviourTable t = saturate(tbox, SemiringMode::trio_commutative);
    benchmark::DoNotOptimize(t.iterations());
  }
}
BENCHMARK(BM_SaturateSword)->Arg(4)->Arg(8);

void BM_StackBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  AnnotatedTBox tbox = sword_tbox(n);
  Axiom goal = AtomicGci{Concept::named("A0"),
                         Concept::named("A" + std::to_string(n))};
  BehaviourTable t = saturate(tbox, SemiringMode::trio_commutative);
  for (auto _ : state) {
    Ara ara = build_ara_stack(tbox, WtaState{goal}, t.stabilized_at());
    benchmark::DoNotOptimize(ara.total_states());
  }
}
BENCHMARK(BM_StackBuild)->Arg(4)->Arg(8);

void BM_PowerMembership(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Ara fam = power_family(n);
  Word w(std::size_t{1} << n, "a");
  for (auto _ : state) {
    benchmark::DoNotOptimize(membership(fam, w));
  }
}
BENCHMARK(BM_PowerMembership)->Arg(8)->Arg(12);

void BM_ProveTrio(benchmark::State& state) {
  AnnotatedTBox tbox = parse_tbox(kExampleTBox);
  Reasoner reasoner(tbox);
  Axiom goal = AtomicGci{Concept::named("A"), Concept::named("D")};
  Word m{"u", "v", "w"};
  EngineConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reasoner.entails(goal, m, config).entailed);
  }
}
BENCHMARK(BM_ProveTrio);

void BM_SwordQuery(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  AnnotatedTBox tbox = sword_tbox(n);
  Reasoner reasoner(tbox);
  Axiom goal = AtomicGci{Concept::named("A0"),
                         Concept::named("A" + std::to_string(n))};
  Word m;
  for (int i = 1; i <= n; ++i) {
    m.push_back("u" + std::to_string(i));
    m.push_back("v" + std::to_string(i));
  }
  EngineConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reasoner.entails(goal, m, config).entailed);
  }
}
BENCHMARK(BM_SwordQuery)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
