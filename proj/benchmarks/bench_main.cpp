#include <benchmark/benchmark.h>

#include <map>

#include "k1lab/congruence.hpp"

namespace {

using namespace k1lab;

struct Fixture {
  std::unique_ptr<GroupContext> ctx;
  Elt u, w;
};

const Fixture& fixture(int catalog_index) {
  static std::map<int, Fixture> cache;
  auto& f = cache[catalog_index];
  if (!f.ctx) {
    const auto name = catalog_names(3).at(catalog_index);
    f.ctx = make_context(EngineConfig{}, GroupModel::build(GroupSpec{name, {}, {}, 1}, 3));
    Rng rng(7, 0, 0);
    f.u = random_unit(f.ctx->ring(), rng);
    f.w = random_unit(f.ctx->ring(), rng);
  }
  return f;
}

void BM_GroupRingMul(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(f.ctx->ring().mul(f.u, f.w));
}
BENCHMARK(BM_GroupRingMul)->DenseRange(0, 6);

void BM_Invert(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(f.ctx->ring().invert(f.u));
}
BENCHMARK(BM_Invert)->Arg(5)->Arg(6);

void BM_ThetaAllSubgroups(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_tuple(*f.ctx, f.u));
}
BENCHMARK(BM_ThetaAllSubgroups)->Arg(2)->Arg(5)->Arg(6);

void BM_IntegralLog(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  const ConjModule& C = f.ctx->conj();
  for (auto _ : state) benchmark::DoNotOptimize(integral_log(C, f.u));
}
BENCHMARK(BM_IntegralLog)->Arg(2)->Arg(5)->Arg(6);

void BM_CheckC1C4(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  const auto t = build_tuple(*f.ctx, f.u);
  f.ctx->conj();
  for (auto _ : state) benchmark::DoNotOptimize(check_c1_c4(*f.ctx, t));
}
BENCHMARK(BM_CheckC1C4)->Arg(5)->Arg(6);

void BM_HowellInsert(benchmark::State& state) {
  const auto cols = static_cast<std::size_t>(state.range(0));
  Rng rng(3, 0, 0);
  std::vector<std::vector<u64>> rows(cols, std::vector<u64>(cols));
  for (auto& r : rows)
    for (auto& x : r) x = rng.below(81);
  for (auto _ : state) {
    HowellBuilder b(3, 4, cols);
    for (const auto& r : rows) b.insert(r);
    benchmark::DoNotOptimize(b.finish());
  }
}
BENCHMARK(BM_HowellInsert)->Arg(16)->Arg(64)->Arg(108);

}  // namespace
BENCHMARK_MAIN();
