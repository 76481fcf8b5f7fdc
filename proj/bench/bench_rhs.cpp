#include "wkg/solver.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

namespace {

struct Fixture {
    wkg::RhsParams p;
    int m;
    std::vector<double> u, ut, v, vt, du, dut, dv, dvt;
    explicit Fixture(int nodes) : m(nodes)
    {
        p = wkg::rhs_params(wkg::reference_scenario());
        u.resize(m);
        ut.resize(m);
        v.resize(m);
        vt.resize(m);
        du.resize(m);
        dut.resize(m);
        dv.resize(m);
        dvt.resize(m);
        for (int j = 0; j < m; ++j) {
            const double r = j * p.h;
            u[j] = 1e-3 * std::exp(-0.1 * r * r);
            ut[j] = 1e-3 * std::sin(r);
            v[j] = 1e-3 * std::cos(r) * std::exp(-0.05 * r);
            vt[j] = 1e-3 * std::exp(-0.2 * r);
        }
    }
};

template <bool Parallel>
void BM_rhs(benchmark::State& st)
{
    Fixture f(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        const long bad = Parallel ? wkg::rhs_parallel(f.p, f.m, f.u.data(), f.ut.data(), f.v.data(), f.vt.data(),
                                                      f.du.data(), f.dut.data(), f.dv.data(), f.dvt.data())
                                  : wkg::rhs_serial(f.p, f.m, f.u.data(), f.ut.data(), f.v.data(), f.vt.data(),
                                                    f.du.data(), f.dut.data(), f.dv.data(), f.dvt.data());
        benchmark::DoNotOptimize(bad);
        benchmark::DoNotOptimize(f.dvt.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_rhs<false>)->Name("rhs_serial")->Arg(1000)->Arg(6000)->Arg(48000);
BENCHMARK(BM_rhs<true>)->Name("rhs_parallel")->Arg(1000)->Arg(6000)->Arg(48000);

BENCHMARK_MAIN();
