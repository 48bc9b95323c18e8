// SPDX-License-Identifier: Apache-2.0
//
// owcnoma - laser-based optical wireless NOMA network simulator
// Copyright (C) 2026 The owcnoma Authors
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
#include "owcnoma/bia.hpp"
#include "owcnoma/harness.hpp"
#include "owcnoma/noma_rate.hpp"

#include <benchmark/benchmark.h>

using namespace owcnoma;

static void BM_BuildBlock(benchmark::State &state)
{
    const int L = int(state.range(0)), G = int(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(bia::build_block(L, G));
}
BENCHMARK(BM_BuildBlock)->Args({4, 3})->Args({8, 4})->Args({16, 4});

static void BM_UserRate(benchmark::State &state)
{
    const int L = int(state.range(0));
    const Eigen::MatrixXd H = Eigen::MatrixXd::Random(L, L).cwiseAbs();
    const NoiseCovariance rz = noise_covariance(4, L, 1.0);
    const UserLink link = UserLink::from_channel(H, rz, 1e-3);
    const PairRateModel m(link, link, 1.0 / (L + 3), OpticalFrontEnd{});
    double p = 1.0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(m.weak_rate(p, 0.2));
        p += 1e-9;
    }
}
BENCHMARK(BM_UserRate)->Arg(4)->Arg(16);

static void BM_Drop(benchmark::State &state)
{
    ScenarioConfig cfg;
    cfg.num_users = int(state.range(0));
    const SchemeId dn[] = {SchemeId::dynamic_noma};
    std::uint64_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_drop(cfg, dn, i++));
}
BENCHMARK(BM_Drop)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_Schemes(benchmark::State &state)
{
    ScenarioConfig cfg;
    const SchemeId s[] = {all_schemes[state.range(0)]};
    std::uint64_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_drop(cfg, s, i++));
    state.SetLabel(to_string(s[0]));
}
BENCHMARK(BM_Schemes)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
