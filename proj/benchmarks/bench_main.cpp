#include "diffcert/linode.hpp"
#include "diffcert/mpoly.hpp"
#include "diffcert/series.hpp"
#include "diffcert/vfield.hpp"

#include <benchmark/benchmark.h>

using namespace diffcert;

namespace {

MultiPoly dense(std::size_t n, int deg) {
    MultiPoly p(n);
    long c = 1;
    for (const auto& e : bounded_monomials(n, deg, deg)) p.add_term(e, BigRat(c++ % 7 - 3, 1 + c % 5));
    return p;
}

void BM_MultiPolyMul(benchmark::State& state) {
    const int deg = static_cast<int>(state.range(0));
    MultiPoly a = dense(2, deg), b = dense(2, deg);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
    state.counters["terms"] = static_cast<double>(a.term_count());
}
BENCHMARK(BM_MultiPolyMul)->Arg(2)->Arg(4)->Arg(6);

void BM_DarbouxAiry(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    MultiPoly y1 = MultiPoly::y(2, 1), y2 = MultiPoly::y(2, 2), z = MultiPoly::z(2);
    Derivation der = make_derivation(PolyVectorField({y2, z * y1}));
    for (auto _ : state) benchmark::DoNotOptimize(darboux_search(der, {d, d}, 1));
}
BENCHMARK(BM_DarbouxAiry)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_FirstIntegralsAiryU2(benchmark::State& state) {
    MultiPoly y1 = MultiPoly::y(3, 1), y2 = MultiPoly::y(3, 2), z = MultiPoly::z(3);
    Derivation der = make_derivation(PolyVectorField({y2, z * y1, y1.pow(2)}));
    for (auto _ : state) benchmark::DoNotOptimize(first_integrals(der, {1, 4}));
}
BENCHMARK(BM_FirstIntegralsAiryU2)->Unit(benchmark::kMillisecond);

void BM_RationalSolutions(benchmark::State& state) {
    UniPoly z = UniPoly::z();
    DiffOperator l({UniPoly(), BigRat(3) * (z * z - UniPoly(1)), (z * z - UniPoly(1)).pow(2)});
    for (auto _ : state) benchmark::DoNotOptimize(rational_solutions(l, UniPoly()));
}
BENCHMARK(BM_RationalSolutions)->Unit(benchmark::kMicrosecond);

void BM_GrowthU1(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    AiryBasis b = airy_basis(order);
    for (auto _ : state) benchmark::DoNotOptimize(growth_classify(b.u1, {order / 2, order}));
}
BENCHMARK(BM_GrowthU1)->Arg(600)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_AiryBasis(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(airy_basis(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_AiryBasis)->Arg(64)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
