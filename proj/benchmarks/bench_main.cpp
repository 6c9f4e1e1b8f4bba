// Copyright 2026 The nilq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "nilq/invariants.hpp"
#include "nilq/measures.hpp"
#include "nilq/nilpotent.hpp"
#include "nilq/sampler.hpp"
#include "nilq/sl_reduction.hpp"
#include "nilq/su_reduction.hpp"

namespace {

nilq::NilpotentPoly rand_poly(int n, uint64_t seed) {
    nilq::Rng r(seed);
    nilq::NilpotentPoly f(n);
    for (std::size_t m = 1; m < f.size(); m++) f[m] = {r.normal(), r.normal()};
    return f;
}

void BM_Multiply(benchmark::State &st) {
    const int n = static_cast<int>(st.range(0));
    auto a = rand_poly(n, 1), b = rand_poly(n, 2);
    for (auto _ : st) benchmark::DoNotOptimize(nilq::multiply(a, b));
}
BENCHMARK(BM_Multiply)->DenseRange(2, 8, 2);

void BM_ExpLog(benchmark::State &st) {
    const int n = static_cast<int>(st.range(0));
    auto f = rand_poly(n, 3);
    for (auto _ : st) benchmark::DoNotOptimize(nilq::log(nilq::exp(f)));
}
BENCHMARK(BM_ExpLog)->DenseRange(2, 8, 2);

void BM_Invariants4(benchmark::State &st) {
    auto s = nilq::haar_sample(4, 4);
    for (auto _ : st) benchmark::DoNotOptimize(nilq::invariants4(s));
}
BENCHMARK(BM_Invariants4)->Unit(benchmark::kMillisecond);

void BM_ReduceSu(benchmark::State &st) {
    auto s = nilq::haar_sample(4, 5);
    for (auto _ : st) benchmark::DoNotOptimize(nilq::reduce_su(s));
}
BENCHMARK(BM_ReduceSu)->Unit(benchmark::kMillisecond);

void BM_ReduceSl(benchmark::State &st) {
    auto su = nilq::reduce_su(nilq::haar_sample(4, 6)).first;
    for (auto _ : st) benchmark::DoNotOptimize(nilq::reduce_sl(su));
}
BENCHMARK(BM_ReduceSl)->Unit(benchmark::kMillisecond);

void BM_K4(benchmark::State &st) {
    auto s = nilq::haar_sample(4, 7);
    for (auto _ : st) benchmark::DoNotOptimize(nilq::k4(s));
}
BENCHMARK(BM_K4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
