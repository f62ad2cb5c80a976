#include <benchmark/benchmark.h>

#include <random>

#include "sptz2/hamiltonian.hpp"
#include "sptz2/modular.hpp"
#include "sptz2/reflection.hpp"
#include "sptz2/zoo.hpp"

using namespace sptz2;

namespace {

ComplexMatrix gaussian(std::mt19937_64 &rng, Index rows, Index cols) {
    std::normal_distribution<double> n;
    ComplexMatrix m(rows, cols);
    for(Index j = 0; j < cols; ++j)
        for(Index i = 0; i < rows; ++i) m(i, j) = Complex(n(rng), n(rng));
    return m;
}

// v_μ = J S_μ with S_μ real symmetric; reflection invariant with ζ = −1 for even k.
mps::RawTuple antisymmetric_tuple(Index d, Index k) {
    std::mt19937_64 rng(7);
    ComplexMatrix j = ComplexMatrix::Zero(k, k);
    for(Index i = 0; i + 1 < k; i += 2) {
        j(i, i + 1) = 1.0;
        j(i + 1, i) = -1.0;
    }
    mps::RawTuple v;
    for(Index mu = 0; mu < d; ++mu) {
        ComplexMatrix a = gaussian(rng, k, k).real().cast<Complex>();
        v.push_back(j * (a + a.transpose()));
    }
    return v;
}

void BM_IndexAklt(benchmark::State &state) {
    auto raw = zoo::aklt();
    for(auto _ : state) benchmark::DoNotOptimize(reflection::z2_index(raw));
}
BENCHMARK(BM_IndexAklt);

void BM_IndexRandom(benchmark::State &state) {
    auto raw = antisymmetric_tuple(3, state.range(0));
    for(auto _ : state) benchmark::DoNotOptimize(reflection::z2_index(raw));
}
BENCHMARK(BM_IndexRandom)->Arg(2)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Primitivity(benchmark::State &state) {
    auto v = mps::normalize(antisymmetric_tuple(3, state.range(0)));
    for(auto _ : state) benchmark::DoNotOptimize(mps::primitivity(v));
}
BENCHMARK(BM_Primitivity)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ModularData(benchmark::State &state) {
    std::mt19937_64 rng(11);
    ComplexMatrix a = gaussian(rng, state.range(0), state.range(0));
    auto omega      = modular::BipartiteVector::normalized(a + a.transpose());
    for(auto _ : state) benchmark::DoNotOptimize(modular::modular_data(omega));
}
BENCHMARK(BM_ModularData)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_AkltChainEd(benchmark::State &state) {
    auto h = hamiltonian::parent_interaction(mps::MpsTuple::from_normalized(zoo::aklt()), 2);
    for(auto _ : state) {
        auto chain = hamiltonian::chain_hamiltonian(h, {state.range(0)});
        benchmark::DoNotOptimize(hamiltonian::ed_report(chain));
    }
}
BENCHMARK(BM_AkltChainEd)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

void BM_ScanDeformedAklt(benchmark::State &state) {
    auto family = zoo::family("deformed-aklt");
    for(auto _ : state) benchmark::DoNotOptimize(scan::scan(family));
}
BENCHMARK(BM_ScanDeformedAklt)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
