#include <benchmark/benchmark.h>

#include <random>

#include "maxones/bool_function.hpp"
#include "maxones/coclone.hpp"
#include "maxones/delta_matroid.hpp"
#include "maxones/gadget.hpp"
#include "maxones/reductions.hpp"
#include "maxones/solvers.hpp"

using namespace maxones;

namespace {

Relation relation_from_mask(int arity, std::uint64_t mask) {
  Relation r(arity);
  for (std::uint32_t c = 0; c < (1u << arity); ++c)
    if ((mask >> c) & 1u) r.insert(c);
  return r;
}

void BM_DeltaSweepArity4(benchmark::State& state) {
  for (auto _ : state) {
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < 65536; ++mask)
      count += is_delta_matroid(relation_from_mask(4, mask));
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_DeltaSweepArity4);

void BM_QFactorizationSweep(benchmark::State& state) {
  BoolFunction maj = BoolFunction::maj();
  for (auto _ : state) {
    std::uint64_t q = 0;
    for (std::uint64_t mask = 0; mask < 65536; mask += 3) {
      Relation r = relation_from_mask(4, mask);
      if (!is_invariant(r, maj) || !is_delta_matroid(r)) continue;
      q += in_q(r).has_value();
    }
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_QFactorizationSweep);

void BM_ClosureOracleArity3(benchmark::State& state) {
  std::vector<Relation> basis = {Relation::c0(), Relation::c1(), Relation::or2(),
                                 Relation::impl(), Relation::nand_rel(2)};
  for (auto _ : state) {
    auto closure = closure_oracle(basis, 3);
    benchmark::DoNotOptimize(closure.size());
  }
}
BENCHMARK(BM_ClosureOracleArity3);

void BM_CatalogVerify(benchmark::State& state) {
  for (auto _ : state) {
    CatalogReport report = verify_catalog();
    benchmark::DoNotOptimize(report.entries_ok);
  }
}
BENCHMARK(BM_CatalogVerify);

void BM_SolveExactNand(benchmark::State& state) {
  ConstraintLanguage env("nand");
  env.add("NAND2", Relation::nand_rel(2));
  env.add("NAND3", Relation::nand_rel(3));
  env.make_conservative();
  std::mt19937_64 rng(5);
  Instance inst;
  int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i)
    inst.add_variable("v" + std::to_string(i), Rational(static_cast<int>(rng() % 7)));
  for (int c = 0; c < 2 * n; ++c)
    inst.add_constraint("NAND2", {static_cast<int>(rng() % n), static_cast<int>(rng() % n)});
  for (auto _ : state) {
    auto sol = solve_exact(inst, env);
    benchmark::DoNotOptimize(sol->measure);
  }
}
BENCHMARK(BM_SolveExactNand)->Arg(12)->Arg(18);

void BM_GadgetMis(benchmark::State& state) {
  TwoSatFormula f;
  f.add_clause("x", false, "y", true);
  f.add_clause("y", false, "z", true);
  f.add_clause("z", false, "x", true);
  f.add_clause("x", true, "z", false);
  Max2SatReduction red = max2sat3_gadget_chain(f);
  for (auto _ : state) {
    MisResult mis = max_weight_independent_set(red.graph);
    benchmark::DoNotOptimize(mis.measure);
  }
}
BENCHMARK(BM_GadgetMis);

}  // namespace

BENCHMARK_MAIN();
