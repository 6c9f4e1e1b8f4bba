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

#include <Eigen/Dense>

#include "nilq/errors.hpp"
#include "nilq/measures.hpp"
#include "nilq/sampler.hpp"
#include "nilq/sl_reduction.hpp"
#include "nilq/su_reduction.hpp"
#include "test_util.hpp"

using namespace nilq;
using namespace nilq::testing;

TEST(Kappa4, NamedStates) {
    EXPECT_NEAR(std::abs(kappa4(named_state("ghz4")) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(kappa4(named_state("bellx2"))), 0.0, 1e-15);
    EXPECT_EQ(kappa4(named_state("zero4")), cplx(0.0));
}

TEST(Kappa4, DeterminantEqualsEigenvalueProduct) {
    Rng r(1);
    for (int t = 0; t < 20; t++) {
        PureState s = rand_state(r, 4);
        Mat4c m = kappa4_matrix(s);
        Eigen::Matrix4cd E;
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) E(i, j) = m[i][j];
        Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(E, false);
        cplx prod = es.eigenvalues().prod() / std::pow(s[0], 8);
        EXPECT_LT(rel(prod, kappa4(s)), 1e-10);
    }
}

TEST(Kappa4, Preconditions) {
    EXPECT_THROW(kappa4(named_state("ghz3")), InvalidInput);
    std::vector<cplx> a(16, 0.0);
    a[5] = 1.0;
    PureState s(4, a);
    EXPECT_THROW(kappa4(s), ZeroReferencePopulation);
}

TEST(K4, ExtremeValues) {
    EXPECT_NEAR(k4(named_state("ghz4")), 1.0, 1e-9);
    EXPECT_LT(k4(named_state("bellx2")), 1e-6);
    EXPECT_EQ(k4(named_state("zero4")), 0.0);
}

TEST(K4, BoundedOnRandomStates) {
    for (int i = 0; i < 100; i++) {
        double v = k4(haar_sample(4, 900 + i));
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0 + 1e-6);
    }
}

TEST(K4, LocalUnitaryInvariance) {
    Rng r(2);
    PureState s = haar_sample(4, 77);
    double lo = 1e9, hi = -1e9;
    for (int t = 0; t < 20; t++) {
        double v = k4(apply_local(s, rand_local_unitary(r, 4)));
        lo = std::min(lo, v), hi = std::max(hi, v);
    }
    EXPECT_LT(hi - lo, 1e-5);
}

TEST(K4, VanishesOnEverySeparableCut) {
    Rng r(3);
    for (uint32_t sub = 0; sub < 7; sub++) {
        uint32_t A = 1u | (sub << 1);
        PureState s = product_of_blocks(r, 4, {A, 0xFu ^ A});
        s = apply_local(s, rand_local_unitary(r, 4));
        EXPECT_LT(k4(s), 1e-6) << "cut " << A;
    }
}

TEST(K4, ClusterVariantsAreStationary) {
    // all three cluster conventions sit at the same reference population
    for (const char *nm : {"cluster4", "cluster4_chain", "cluster4_box"}) {
        auto r = k4_full(named_state(nm));
        EXPECT_NEAR(r.su.achieved_population, 0.25, 1e-9) << nm;
        EXPECT_NEAR(r.a, 4.0, 1e-9) << nm;
    }
}

TEST(S2, Values) {
    auto ghz = reduce_sl(reduce_su(named_state("ghz4")).first).first;
    EXPECT_NEAR(s2(ghz), 0.0, 1e-20);
    SlTanglemeter t;
    t.family = Family::general;
    t.betas = {1.0, 0.0, 0.0};
    EXPECT_DOUBLE_EQ(s2(t), 1.0);
    auto rnd = reduce_sl(reduce_su(haar_sample(4, 12)).first).first;
    EXPECT_GT(s2(rnd), 0.0);
    auto w = reduce_sl(reduce_su(named_state("w4")).first).first;
    EXPECT_THROW(s2(w), DegenerateOrbit);
}

TEST(OrbitDistance, MetricBasics) {
    SlTanglemeter a, b, c;
    a.family = b.family = c.family = Family::general;
    a.betas = {1.0, 0.0, 0.0};
    b.betas = {0.0, 0.0, 0.0};
    c.betas = {cplx(0.2, 0.1), 0.3, cplx(0, -1)};
    EXPECT_DOUBLE_EQ(orbit_distance(a, b), 1.0);
    EXPECT_DOUBLE_EQ(orbit_distance(a, a), 0.0);
    EXPECT_DOUBLE_EQ(orbit_distance(a, c), orbit_distance(c, a));
    SlTanglemeter d;
    d.family = Family::degenerate;
    EXPECT_THROW(orbit_distance(a, d), DegenerateOrbit);
}

TEST(S1, GhzAndInvariance) {
    auto [s1, nu] = s1_and_nonunitarity(named_state("ghz4"));
    EXPECT_NEAR(s1, 1.0, 1e-9);
    EXPECT_NEAR(nu, 0.0, 1e-9);
    Rng r(4);
    PureState s = haar_sample(4, 31);
    auto base = s1_and_nonunitarity(s);
    EXPECT_NEAR(base.second, std::abs(std::log(base.first)), 1e-12);
    for (int t = 0; t < 5; t++) {
        auto v = s1_and_nonunitarity(apply_local(s, rand_local_unitary(r, 4)));
        EXPECT_NEAR(v.first, base.first, 1e-6);
    }
    EXPECT_THROW(s1_and_nonunitarity(named_state("w4")), DegenerateOrbit);
}
