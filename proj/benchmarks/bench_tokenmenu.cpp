#include <benchmark/benchmark.h>

#include "tokenmenu/audit.hpp"
#include "tokenmenu/binary.hpp"
#include "tokenmenu/cost.hpp"
#include "tokenmenu/cost_oracle.hpp"
#include "tokenmenu/efficient.hpp"
#include "tokenmenu/screening.hpp"
#include "tokenmenu/tariffs.hpp"

using namespace tokenmenu;

namespace {

const ProductionParams kParams(0.25, 0.25, 0.25, 1.0);
const CostRates kCosts(0.125, 0.125, 0.125);

AllocationMenu allocations() {
  return AllocationMenu(ScalarDistribution::uniform(), ScalarDistribution::uniform(), kParams,
                        kCosts);
}

PackageMenu packages() {
  return PackageMenu(theta_distribution(ScalarDistribution::uniform(),
                                        ScalarDistribution::uniform(), kParams),
                     kParams, kCosts);
}

void BM_ContractibleCost(benchmark::State& state) {
  const CostModel model(kParams, kCosts);
  double q = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.contractible(q, 0.4));
    q = q < 50.0 ? q * 1.01 : 0.01;
  }
}
BENCHMARK(BM_ContractibleCost);

void BM_CostOracle(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(cost_numeric_oracle(WithFloor{}, 8.0, kParams, kCosts));
  }
}
BENCHMARK(BM_CostOracle)->Unit(benchmark::kMillisecond);

void BM_EfficientAllocation(benchmark::State& state) {
  std::vector<Segment> segs;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (std::size_t k = 0; k < n; ++k) segs.push_back({1.0 / n, (k + 1.0) / n});
  const TaskProfile profile(segs);
  for (auto _ : state) benchmark::DoNotOptimize(efficient_allocation(profile, kParams, kCosts));
}
BENCHMARK(BM_EfficientAllocation)->Arg(1)->Arg(32)->Arg(1024);

void BM_AllocationItem(benchmark::State& state) {
  const AllocationMenu menu = allocations();
  double w = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(menu.item(w, 0.7));
    w = w + 1e-3 <= 1.0 ? w + 1e-3 : 0.5;
  }
}
BENCHMARK(BM_AllocationItem);

void BM_AllocationRevenue(benchmark::State& state) {
  const AllocationMenu menu = allocations();
  for (auto _ : state) benchmark::DoNotOptimize(revenue_profit(menu));
}
BENCHMARK(BM_AllocationRevenue)->Unit(benchmark::kMillisecond);

void BM_PackageRevenue(benchmark::State& state) {
  const PackageMenu menu = packages();
  for (auto _ : state) benchmark::DoNotOptimize(revenue_profit(menu));
}
BENCHMARK(BM_PackageRevenue)->Unit(benchmark::kMillisecond);

void BM_TabulatedThetaLaw(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta_distribution(ScalarDistribution::uniform(),
                                                ScalarDistribution::uniform(0.2, 1.0), kParams));
  }
}
BENCHMARK(BM_TabulatedThetaLaw)->Unit(benchmark::kMillisecond);

void BM_AllocationAudit(benchmark::State& state) {
  const AllocationMenu menu = allocations();
  const auto n = static_cast<std::size_t>(state.range(0));
  const verify::GridSpec grid{{{0.0, 1.0, n, {0.5}}, {1.0 / n, 1.0, n, {}}}};
  for (auto _ : state) {
    const auto rows = verify::allocation_rows(menu, grid);
    benchmark::DoNotOptimize(verify::ic_audit(rows, verify::allocation_lookup(menu)));
  }
}
BENCHMARK(BM_AllocationAudit)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_BestResponse(benchmark::State& state) {
  const AllocationTariffs tariffs(allocations());
  const TwoPartTariff t = *tariffs.tariff(0.9, 0.6);
  const ValueScaleType buyer(0.9, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(buyer_best_response(t, buyer, kParams));
}
BENCHMARK(BM_BestResponse);

void BM_BinaryMenu(benchmark::State& state) {
  const TaskProfile a = TaskProfile::constant(0.5);
  const TaskProfile b = TaskProfile::step(1.0, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(binary_menu(a, b, 0.5, kParams, kCosts));
}
BENCHMARK(BM_BinaryMenu);

}  // namespace

BENCHMARK_MAIN();
