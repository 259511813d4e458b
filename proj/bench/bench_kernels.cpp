#include "rdnet/kernels.hpp"
#include "rdnet/network.hpp"
#include "rdnet/stoich.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace rdnet;

std::vector<double> random_field(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

template <auto Apply>
void diffusion(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const Grid g = Grid::square(n);
    const auto u = random_field(g.num_cells(), 1);
    const auto d = random_field(g.num_cells(), 2);
    std::vector<double> out(g.num_cells());
    for (auto _ : st) {
        Apply(g, d, u, out, kernels::FaceAverage::Arithmetic);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(g.num_cells()));
}

template <auto Apply>
void reaction(benchmark::State& st) {
    const auto cells = static_cast<std::size_t>(st.range(0));
    const NetworkSpec spec = parse_network("species A1 A2 A3 A4;\nA1 + A2 <-> A3 : kf=1, kb=1;\nA1 + A4 <-> A3 : kf=2, kb=1;\n");
    const stoich::RateModel model(spec);
    kernels::Fields c, f(4, std::vector<double>(cells));
    for (unsigned i = 0; i < 4; ++i) c.push_back(random_field(cells, i));
    for (auto _ : st) {
        Apply(model, c, f);
        benchmark::DoNotOptimize(f[0].data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(cells));
}

} // namespace

BENCHMARK(diffusion<rdnet::kernels::serial::diffusion_apply>)->Name("diffusion/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(diffusion<rdnet::kernels::omp::diffusion_apply>)->Name("diffusion/omp")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(reaction<rdnet::kernels::serial::reaction_production>)->Name("reaction/serial")->RangeMultiplier(8)->Range(4096, 262144);
BENCHMARK(reaction<rdnet::kernels::omp::reaction_production>)->Name("reaction/omp")->RangeMultiplier(8)->Range(4096, 262144);

int main(int argc, char** argv) {
    rdnet::kernels::apply_thread_cap_from_env();
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
