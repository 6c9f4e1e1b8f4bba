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

#include <gtest/gtest.h>

#include <numbers>

#include "nilq/errors.hpp"
#include "nilq/sampler.hpp"
#include "nilq/su_reduction.hpp"
#include "test_util.hpp"

using namespace nilq;
using namespace nilq::testing;

namespace {

// exp(-i G dt) by a long Taylor series
Mat2 series_step(cplx pp, cplx pm, double dt) {
    Mat2 G{0.0, pp, pm, 0.0};
    Mat2 sum = mat2_identity(), term = mat2_identity();
    for (int k = 1; k < 40; k++) {
        term = mat2_mul(term, G);
        for (auto &x : term) x *= cplx(0, -dt) / double(k);
        for (int j = 0; j < 4; j++) sum[j] += term[j];
    }
    return sum;
}

double pop(const PureState &s) {
    return std::norm(s[0]) / s.norm2();
}

}  // namespace

TEST(GeneratorStep, MatchesSeries) {
    Rng r(1);
    for (int t = 0; t < 20; t++) {
        cplx pp = rand_c(r), pm = rand_c(r);
        for (double dt : {1e-7, 1e-3, 0.3, 1.0}) {
            Mat2 a = generator_step(pp, pm, dt), b = series_step(pp, pm, dt);
            for (int k = 0; k < 4; k++) EXPECT_LT(std::abs(a[k] - b[k]), 1e-12) << dt;
        }
    }
}

TEST(GeneratorStep, UnitaryForHermitianGenerator) {
    Rng r(2);
    cplx pm = rand_c(r);
    Mat2 u = generator_step(std::conj(pm), pm, 0.7);
    Mat2 ud{std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
    Mat2 p = mat2_mul(u, ud);
    EXPECT_LT(std::abs(p[0] - 1.0) + std::abs(p[1]) + std::abs(p[2]) + std::abs(p[3] - 1.0), 1e-14);
    EXPECT_LT(std::abs(mat2_det(u) - 1.0), 1e-14);
}

TEST(Eigenframe, DiagonalizesReducedDensityMatrices) {
    Rng r(3);
    PureState s = rand_state(r, 4);
    PureState t = apply_local(s, eigenframe_rotation(s, 0));
    for (int q = 1; q <= 4; q++) {
        Mat2 rho = single_qubit_rdm(t, q);
        EXPECT_LT(std::abs(rho[1]), 1e-12);
        EXPECT_GE(rho[0].real(), rho[3].real() - 1e-12);
    }
    // choice bit flips the ordering on that qubit
    PureState u = apply_local(s, eigenframe_rotation(s, 0b0100));
    Mat2 rho = single_qubit_rdm(u, 3);
    EXPECT_LE(rho[0].real(), rho[3].real() + 1e-12);
}

TEST(Eigenframe, FlipToMaxMovesLargestAmplitudeToReference) {
    PureState s(3, {0.1, 0.0, 0.0, 0.0, 0.0, 0.9, 0.0, 0.2});
    PureState t = apply_local(s, flip_to_max(s));
    EXPECT_NEAR(std::abs(t[0]), 0.9, 1e-15);
}

TEST(ReduceSu, GhzIsAlreadyCanonic) {
    auto [tm, op] = reduce_su(named_state("ghz4"));
    EXPECT_NEAR(tm.achieved_population, 0.5, 1e-12);
    EXPECT_NEAR(std::abs(tm.poly[15] - 1.0), 0.0, 1e-12);
    EXPECT_LT(tm.residual, 1e-9);
}

TEST(ReduceSu, RandomStatesReachStationaryCanonicForm) {
    for (int i = 0; i < 20; i++) {
        PureState psi = haar_sample(4, 100 + i);
        SuTrace trace;
        auto [tm, op] = reduce_su(psi, FlowConfig{}, &trace);
        for (uint32_t m : {1u, 2u, 4u, 8u}) EXPECT_LT(std::abs(tm.poly[m]), 1e-9);
        // the operation maps the input onto the canonic state exactly
        PureState img = apply_local(psi, op);
        for (std::size_t m = 0; m < 16; m++) EXPECT_LT(std::abs(img[m] - tm.canonic[m]), 1e-10);
        EXPECT_NEAR(tm.canonic[0].imag(), 0.0, 1e-14);
        EXPECT_GT(tm.canonic[0].real(), 0.0);
        // the population never drops along accepted steps
        for (const auto &seq : trace.populations)
            for (std::size_t k = 1; k < seq.size(); k++) EXPECT_GE(seq[k], seq[k - 1] * (1 - 1e-15));
        // every single start is bounded by the best population
        for (const auto &seq : trace.populations)
            if (!seq.empty()) EXPECT_LE(seq.front(), tm.achieved_population + 1e-12);
    }
}

TEST(ReduceSu, TrilinearPhasesFixed) {
    for (int i = 0; i < 10; i++) {
        auto tm = reduce_su(haar_sample(4, 200 + i)).first;
        for (uint32_t m : {14u, 13u, 11u, 7u}) {
            if (std::abs(tm.poly[m]) < 1e-7) continue;
            EXPECT_NEAR(tm.poly[m].imag(), 0.0, 1e-7 * std::abs(tm.poly[m])) << m;
            EXPECT_GT(tm.poly[m].real(), 0.0);
        }
        // the leftover cube-root-of-unity freedom is pinned to the principal sector
        for (uint32_t m : {15u, 3u, 5u, 6u, 9u, 10u, 12u}) {
            if (std::abs(tm.poly[m]) < 1e-7) continue;
            double a = std::arg(tm.poly[m]);
            EXPECT_GT(a, -std::numbers::pi / 3 - 1e-9);
            EXPECT_LE(a, std::numbers::pi / 3 + 1e-9);
            break;
        }
    }
}

TEST(ReduceSu, LocalUnitaryImagesAgree) {
    Rng r(4);
    for (int i = 0; i < 10; i++) {
        PureState psi = haar_sample(4, 300 + i);
        auto a = reduce_su(apply_local(psi, rand_local_unitary(r, 4))).first;
        auto b = reduce_su(apply_local(psi, rand_local_unitary(r, 4))).first;
        EXPECT_LT(a.poly.max_abs_diff(b.poly), 1e-7);
        EXPECT_NEAR(a.achieved_population, b.achieved_population, 1e-10);
    }
}

TEST(ReduceSu, ThreeQubits) {
    auto g = reduce_su(named_state("ghz3")).first;
    EXPECT_NEAR(g.achieved_population, 0.5, 1e-12);
    Rng r(5);
    for (int i = 0; i < 5; i++) {
        PureState psi = haar_sample(3, 400 + i);
        auto a = reduce_su(psi).first;
        auto b = reduce_su(apply_local(psi, rand_local_unitary(r, 3))).first;
        for (uint32_t m : {1u, 2u, 4u}) EXPECT_LT(std::abs(a.poly[m]), 1e-9);
        EXPECT_LT(a.poly.max_abs_diff(b.poly), 1e-7);
    }
}

TEST(ReduceSu, CompletelyFlatFrameStillConverges) {
    // every qubit maximally mixed: the ring cluster needs the Hadamard starts
    auto tm = reduce_su(named_state("cluster4_box")).first;
    EXPECT_NEAR(tm.achieved_population, 0.25, 1e-9);
    EXPECT_LT(tm.residual, 1e-9);
}

TEST(ReduceSu, NonConvergenceReported) {
    FlowConfig cfg;
    cfg.max_iters = 1;
    cfg.polish_iters = 0;
    EXPECT_THROW(reduce_su(haar_sample(4, 5), cfg), NonConvergence);
}

TEST(ReduceSu, PhaseFixingSolvesChosenConstraints) {
    Rng r(6);
    NilpotentPoly f = rand_poly(r, 4);
    f[0] = 0;
    LocalOperation ph = phase_fixing(f, 1e-9);
    // phases act as f_m -> f_m * prod_q e^{i theta_q} over bits of m
    auto rotated = [&](uint32_t m) {
        cplx v = f[m];
        for (int q = 1; q <= 4; q++)
            if ((m >> (q - 1)) & 1) v *= ph.mat(q)[3];
        return v;
    };
    for (uint32_t m : {14u, 13u, 11u, 7u}) EXPECT_NEAR(std::arg(rotated(m)), 0.0, 1e-9);
}

TEST(CosetDimension, Formulas) {
    EXPECT_EQ(coset_dimension(4, Group::su), 18);
    EXPECT_EQ(coset_dimension(4, Group::sl), 6);
    EXPECT_EQ(coset_dimension(3, Group::su), 5);
    EXPECT_EQ(coset_dimension(5, Group::su), 64 - 15 - 2);
    EXPECT_THROW(coset_dimension(2, Group::su), InvalidInput);
    EXPECT_THROW(coset_dimension(3, Group::sl), InvalidInput);
}
