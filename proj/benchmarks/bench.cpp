#include <benchmark/benchmark.h>

#include "divcode/codes.hpp"
#include "divcode/expansion.hpp"
#include "divcode/geometry.hpp"
#include "divcode/gf.hpp"
#include "divcode/search.hpp"

using namespace divcode;

static void BM_field_mul(benchmark::State& state) {
    const auto F = gf::Field::make(2, 3);
    gf::Elem x = 3, y = 5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(F.mul(x, y));
        x = F.add(x, 1);
        if (x == 0) x = 1;
    }
}
BENCHMARK(BM_field_mul);

static void BM_expand(benchmark::State& state) {
    const auto params = expansion::DivParams::make(8, 2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(expansion::expand(1049, params));
}
BENCHMARK(BM_expand);

static void BM_expand_big(benchmark::State& state) {
    const auto params = expansion::DivParams::make(9, 20, 1);
    const expansion::Int n("123456789012345678901234567890123456789");
    for (auto _ : state) benchmark::DoNotOptimize(expansion::expand(n, params));
}
BENCHMARK(BM_expand_big);

static void BM_coin_oracle(benchmark::State& state) {
    const std::vector<long long> coins{73, 36, 32};
    for (auto _ : state)
        benchmark::DoNotOptimize(expansion::coin_representable(state.range(0), coins));
}
BENCHMARK(BM_coin_oracle)->Arg(585);

static void BM_weight_divisibility(benchmark::State& state) {
    const auto& C = codes::base_examples()[4];  // [17,3] over GF(8)
    for (auto _ : state) benchmark::DoNotOptimize(codes::weight_divisibility(C));
}
BENCHMARK(BM_weight_divisibility);

static void BM_is_divisible_blocks(benchmark::State& state) {
    const auto F = gf::Field::make(2, 3);
    const auto params = expansion::DivParams::make(8, 2, 1);
    const auto M = geometry::construct_from_expansion(F, 1049, params);
    for (auto _ : state) benchmark::DoNotOptimize(geometry::is_divisible(M, 32));
}
BENCHMARK(BM_is_divisible_blocks);

static void BM_exists_certificate_n11(benchmark::State& state) {
    search::SearchSpec spec{gf::Field::make(2, 3), 3, 2, 11, 1};
    spec.use_bounds = false;
    for (auto _ : state) benchmark::DoNotOptimize(search::exists_divisible_set(spec));
}
BENCHMARK(BM_exists_certificate_n11)->Unit(benchmark::kMillisecond);

static void BM_classify(benchmark::State& state) {
    search::SearchSpec spec{gf::Field::make(2, 3), 3, 2,
                            static_cast<unsigned long long>(state.range(0)), 1};
    for (auto _ : state) benchmark::DoNotOptimize(search::classify(spec));
}
BENCHMARK(BM_classify)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
