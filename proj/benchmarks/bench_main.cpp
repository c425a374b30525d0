// SPDX-License-Identifier: Apache-2.0
//
// xlmimo: near-field XL-MIMO channel simulation and degrees-of-freedom analysis
// Copyright (C) 2026 the xlmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "xlmimo/channel.hpp"
#include "xlmimo/em.hpp"
#include "xlmimo/metrics.hpp"
#include "xlmimo/precoding.hpp"
#include "xlmimo/rng.hpp"

namespace
{
    using namespace xlmimo;

    const WaveParams w0{};

    ArrayGeometry square(int n, double side, double z)
    {
        SurfaceSpec s;
        s.n_x = n;
        s.n_y = n;
        s.spacing = (n > 1) ? side / (n - 1) : side;
        s.center = {0.0, 0.0, z};
        return build_upa(s);
    }

    void BM_dyadic_kernel(benchmark::State &state)
    {
        const Point3 s{0.0, 0.0, 0.0};
        const Point3 r{0.3, 0.4, 7.0};
        for (auto _ : state)
            benchmark::DoNotOptimize(dyadic_green(r, s, w0));
    }
    BENCHMARK(BM_dyadic_kernel);

    void BM_los_dyadic_assembly(benchmark::State &state)
    {
        const int n = static_cast<int>(state.range(0));
        const auto tx = square(n, 10.0, 0.0);
        const auto rx = square(n, 10.0, 7.0);
        for (auto _ : state)
            benchmark::DoNotOptimize(los_channel_dyadic(tx, rx, w0));
        state.SetComplexityN(n * n);
    }
    BENCHMARK(BM_los_dyadic_assembly)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

    void BM_nlos_planewave(benchmark::State &state)
    {
        const double side = static_cast<double>(state.range(0));
        const auto tx = square(8, side, 0.0);
        const auto rx = square(8, side, 40.0);
        const auto spectrum = ScatteringSpectrum::isotropic(side, side, side, side, w0);
        std::uint64_t seed = 0;
        for (auto _ : state)
            benchmark::DoNotOptimize(nlos_fourier_planewave(tx, rx, spectrum, seed++, w0));
    }
    BENCHMARK(BM_nlos_planewave)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

    void BM_edof(benchmark::State &state)
    {
        const int n = static_cast<int>(state.range(0));
        const auto tx = square(n, 10.0, 0.0);
        const auto rx = square(n, 10.0, 7.0);
        const auto h = los_channel_dyadic(tx, rx, w0);
        for (auto _ : state)
            benchmark::DoNotOptimize(edof(h));
    }
    BENCHMARK(BM_edof)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

    arma::cx_mat random_channel(arma::uword k, arma::uword n)
    {
        arma::cx_mat h(k, n);
        for (arma::uword i = 0; i < k; i++)
            for (arma::uword j = 0; j < n; j++)
                h(i, j) = rng::complex_gaussian(rng::key(5, static_cast<std::int64_t>(i),
                                                          static_cast<std::int64_t>(j), 0, 0));
        return h;
    }

    void BM_zf_exact(benchmark::State &state)
    {
        const auto h = random_channel(8, static_cast<arma::uword>(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(zf_exact(h));
    }
    BENCHMARK(BM_zf_exact)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

    void BM_zf_neumann(benchmark::State &state)
    {
        const auto h = random_channel(8, 1024);
        const int order = static_cast<int>(state.range(0));
        for (auto _ : state)
            benchmark::DoNotOptimize(zf_neumann(h, order));
    }
    BENCHMARK(BM_zf_neumann)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
}

BENCHMARK_MAIN();
