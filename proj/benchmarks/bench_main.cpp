#include <benchmark/benchmark.h>

#include "selmerlab/algebra/linalg.hpp"
#include "selmerlab/bundles/bundles.hpp"
#include "selmerlab/density/density.hpp"
#include "selmerlab/vinberg/vinberg.hpp"
#include "selmerlab/zeta/zeta.hpp"

using namespace selmerlab;
using algebra::Field;

namespace {

vinberg::Invariant invariant_for(const Field& F, unsigned n, std::uint64_t salt) {
  vinberg::Invariant c{n, {}};
  for (unsigned i = 0; i < 2 * n + 1; ++i) c.coeffs.push_back(F.element(static_cast<std::uint32_t>((salt + 7 * i) % F.order())));
  return c;
}

void BM_FieldMul(benchmark::State& state) {
  const Field F = Field::of_order(static_cast<std::uint64_t>(state.range(0)));
  auto a = F.element(2), b = F.element(3);
  for (auto _ : state) {
    a = F.mul(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul)->Arg(5)->Arg(9)->Arg(243);

void BM_Charpoly(benchmark::State& state) {
  const Field F = Field::of_order(5);
  const unsigned n = static_cast<unsigned>(state.range(0));
  const auto T = vinberg::kostant1(F, invariant_for(F, n, 1));
  for (auto _ : state) benchmark::DoNotOptimize(algebra::charpoly(F, T));
}
BENCHMARK(BM_Charpoly)->Arg(1)->Arg(2)->Arg(3);

void BM_IsRegular(benchmark::State& state) {
  const Field F = Field::of_order(5);
  const auto T = vinberg::kostant2(F, invariant_for(F, 2, 3));
  for (auto _ : state) benchmark::DoNotOptimize(vinberg::is_regular(F, T));
}
BENCHMARK(BM_IsRegular);

void BM_KostantReduce(benchmark::State& state) {
  const Field F = Field::of_order(5);
  const unsigned n = static_cast<unsigned>(state.range(0));
  SampleEngine rng = block_engine(1, 0);
  const auto target = vinberg::kostant1(F, invariant_for(F, n, 4));
  const auto g = bundles::random_borel_orthogonal(F, n, rng);
  const auto A = algebra::mat_mul(F, algebra::mat_mul(F, g, target), *algebra::inverse(F, g));
  for (auto _ : state) benchmark::DoNotOptimize(bundles::kostant_reduce(F, A));
}
BENCHMARK(BM_KostantReduce)->Arg(1)->Arg(2);

void BM_AlphaExhaustive(benchmark::State& state) {
  const Field F = Field::of_order(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(density::alpha_v(F, 1));
}
BENCHMARK(BM_AlphaExhaustive)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_BetaSampled(benchmark::State& state) {
  const Field F = Field::of_order(5);
  for (auto _ : state) benchmark::DoNotOptimize(density::beta_v(F, 1, density::kMinSamples, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(density::kMinSamples));
}
BENCHMARK(BM_BetaSampled)->Unit(benchmark::kMillisecond);

void BM_ProfileSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bundles::profile_sweep(1, state.range(0), 2 * state.range(0)));
}
BENCHMARK(BM_ProfileSweep)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_EulerProduct(benchmark::State& state) {
  const auto ctx = zeta::ZetaContext::projective_line(5, static_cast<unsigned>(state.range(0)));
  const auto family = zeta::one_plus_power(2);
  for (auto _ : state) benchmark::DoNotOptimize(zeta::euler_product(ctx, family));
}
BENCHMARK(BM_EulerProduct)->Arg(10)->Arg(30);

}  // namespace
BENCHMARK_MAIN();
