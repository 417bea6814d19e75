#include <benchmark/benchmark.h>

#include <omp.h>

#include "braidfac/cgroups.hpp"
#include "braidfac/factsemi.hpp"

using namespace braidfac;

namespace {

const CPresentation& compiled() {
    static const CPresentation p = [] {
        CPresentation in = parse_presentation("rank=2;\nrel: x2 x1 x2^-1 x1^-1\nrel: x2^-1 x1 x2 x1^-1\nconj: i=1; j=2; w=\n");
        return presentation_from_factorization(compile_dgroup(in).s);
    }();
    return p;
}

const CPresentation& wide() {
    static const CPresentation p = [] {
        CPresentation q(4);
        q.add(CRelation::raw(parse_word("x1 x2 x1^-1 x2^-1", 4)));
        q.add(CRelation::raw(parse_word("x3 x4 x3 x4^-1 x3^-1 x4^-1", 4)));
        return q;
    }();
    return p;
}

Factorization twist(int m) {
    Factorization s(m);
    for (int r = 0; r < m; ++r)
        for (int k = 1; k < m; ++k) s.factors.push_back(Factor::tagged(generator_conjugator(k, m), 1));
    return s;
}

void set_threads(const benchmark::State& st) { omp_set_num_threads(static_cast<int>(st.range(0))); }

}  // namespace

static void BM_hom_serial_compiled(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(hom_count_serial(compiled(), 5));
}
static void BM_hom_omp_compiled(benchmark::State& st) {
    set_threads(st);
    for (auto _ : st) benchmark::DoNotOptimize(hom_count(compiled(), 5));
}
static void BM_hom_serial_wide(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(hom_count_serial(wide(), 5));
}
static void BM_hom_omp_wide(benchmark::State& st) {
    set_threads(st);
    for (auto _ : st) benchmark::DoNotOptimize(hom_count(wide(), 5));
}

// a target several moves out, so the search spends its budget
const Factorization& far_target() {
    static const Factorization t = [] {
        Factorization s = twist(3);
        const int ks[] = {1, 3, 2, 5, 4, 1, 3, 2};
        for (int k : ks) s = hurwitz_move(s, k, k % 2 ? Direction::Fwd : Direction::Bwd);
        return s;
    }();
    return t;
}

static void BM_orbit_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(orbit_search_serial(twist(3), far_target(), MoveSet{}, 3000).nodes);
}
static void BM_orbit_omp(benchmark::State& st) {
    set_threads(st);
    for (auto _ : st) benchmark::DoNotOptimize(orbit_search(twist(3), far_target(), MoveSet{}, 3000).nodes);
}

BENCHMARK(BM_hom_serial_compiled)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_hom_omp_compiled)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_hom_serial_wide)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_hom_omp_wide)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_orbit_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_orbit_omp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
