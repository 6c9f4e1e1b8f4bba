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

#include "nilq/errors.hpp"
#include "nilq/nilpotent.hpp"
#include "nilq/state.hpp"
#include "nilq/su_reduction.hpp"
#include "test_util.hpp"

using namespace nilq;
using namespace nilq::testing;

namespace {

// schoolbook product with s_i^2 = 0
NilpotentPoly naive_mul(const NilpotentPoly &a, const NilpotentPoly &b) {
    NilpotentPoly r(a.n());
    for (uint32_t x = 0; x < a.size(); x++)
        for (uint32_t y = 0; y < b.size(); y++)
            if (!(x & y)) r[x | y] += a[x] * b[y];
    return r;
}

NilpotentPoly taylor_exp(const NilpotentPoly &f) {
    NilpotentPoly sum = NilpotentPoly::unit(f.n()), term = NilpotentPoly::unit(f.n());
    for (int k = 1; k <= f.n(); k++) {
        term = naive_mul(term, f) * (1.0 / k);
        sum = sum + term;
    }
    return sum;
}

}  // namespace

TEST(NilpotentPoly, ConstructionAndSize) {
    NilpotentPoly f(4);
    EXPECT_EQ(f.n(), 4);
    EXPECT_EQ(f.size(), 16u);
    EXPECT_EQ(f.max_abs(), 0.0);
    auto u = NilpotentPoly::unit(3);
    EXPECT_EQ(u[0], cplx(1.0));
    auto m = NilpotentPoly::monomial(4, 5, {2, 1});
    EXPECT_EQ(m[5], cplx(2, 1));
    EXPECT_THROW(NilpotentPoly(0), InvalidInput);
    EXPECT_THROW(NilpotentPoly(kMaxQubits + 1), InvalidInput);
    EXPECT_THROW(NilpotentPoly(2, std::vector<cplx>(3)), InvalidInput);
}

TEST(NilpotentPoly, ArithmeticOperators) {
    Rng r(1);
    auto a = rand_poly(r, 3), b = rand_poly(r, 3);
    auto s = a + b, d = a - b, k = a * cplx(0, 2), neg = -a;
    for (std::size_t m = 0; m < a.size(); m++) {
        EXPECT_EQ(s[m], a[m] + b[m]);
        EXPECT_EQ(d[m], a[m] - b[m]);
        EXPECT_EQ(k[m], a[m] * cplx(0, 2));
        EXPECT_EQ(neg[m], -a[m]);
    }
    EXPECT_NEAR(a.max_abs_diff(a), 0.0, 0.0);
}

TEST(NilpotentPoly, ProductMatchesSchoolbook) {
    Rng r(2);
    for (int n = 1; n <= 6; n++) {
        auto a = rand_poly(r, n), b = rand_poly(r, n);
        EXPECT_LT(multiply(a, b).max_abs_diff(naive_mul(a, b)), 1e-12) << "n=" << n;
    }
}

TEST(NilpotentPoly, ProductIsCommutativeAndAssociative) {
    Rng r(3);
    auto a = rand_poly(r, 4), b = rand_poly(r, 4), c = rand_poly(r, 4);
    EXPECT_LT(multiply(a, b).max_abs_diff(multiply(b, a)), 1e-12);
    EXPECT_LT(multiply(multiply(a, b), c).max_abs_diff(multiply(a, multiply(b, c))), 1e-11);
}

TEST(NilpotentPoly, GeneratorsSquareToZero) {
    for (int i = 1; i <= 4; i++) {
        auto s = NilpotentPoly::monomial(4, 1u << (i - 1));
        EXPECT_EQ(multiply(s, s).max_abs(), 0.0);
    }
}

TEST(NilpotentPoly, MismatchedSizesRejected) {
    EXPECT_THROW(multiply(NilpotentPoly(3), NilpotentPoly(4)), InvalidInput);
    EXPECT_THROW(NilpotentPoly(3) + NilpotentPoly(4), InvalidInput);
}

TEST(NilpotentPoly, ExpMatchesTaylorSeries) {
    Rng r(4);
    for (int n = 2; n <= 5; n++) {
        auto f = rand_poly(r, n);
        f[0] = 0;
        EXPECT_LT(exp(f).max_abs_diff(taylor_exp(f)), 1e-11) << "n=" << n;
    }
}

TEST(NilpotentPoly, LogExpRoundTrip) {
    Rng r(5);
    for (int n = 1; n <= 6; n++) {
        auto f = rand_poly(r, n);
        f[0] = 0;
        EXPECT_LT(log(exp(f)).max_abs_diff(f), 1e-10) << "n=" << n;
        auto F = rand_poly(r, n);
        F[0] = 1;
        EXPECT_LT(exp(log(F)).max_abs_diff(F), 1e-10) << "n=" << n;
    }
}

TEST(NilpotentPoly, ProductStateHasOnlyLinearLog) {
    // F = prod (1 + b_i s_i) has log sum b_i s_i
    Rng r(6);
    NilpotentPoly F = NilpotentPoly::unit(4), expect(4);
    for (int i = 0; i < 4; i++) {
        cplx b = rand_c(r);
        F = naive_mul(F, NilpotentPoly::unit(4) + NilpotentPoly::monomial(4, 1u << i, b));
        expect[1u << i] = b;
    }
    EXPECT_LT(log(F).max_abs_diff(expect), 1e-12);
}

TEST(NilpotentPoly, LogExpPreconditions) {
    NilpotentPoly F(3);
    F[0] = 2.0;
    EXPECT_THROW(log(F), InvalidInput);
    NilpotentPoly f(3);
    f[0] = 0.5;
    EXPECT_THROW(exp(f), InvalidInput);
}

TEST(NilpotentPoly, PartialDerivative) {
    NilpotentPoly f(3);
    f[0b011] = 2.0;  // 2 s1 s2
    f[0b100] = 3.0;  // 3 s3
    auto d1 = partial(f, 1);
    EXPECT_EQ(d1[0b010], cplx(2.0));
    EXPECT_EQ(d1.max_abs(), 2.0);
    auto d3 = partial(f, 3);
    EXPECT_EQ(d3[0], cplx(3.0));
    EXPECT_THROW(partial(f, 0), InvalidInput);
    EXPECT_THROW(partial(f, 4), InvalidInput);
}

TEST(NilpotentPoly, PartialObeysTruncatedProductRule) {
    // s_i^2 = 0, so d_i(ab) = d_i a * b|_{s_i=0} + a|_{s_i=0} * d_i b
    Rng r(7);
    auto a = rand_poly(r, 4), b = rand_poly(r, 4);
    auto drop = [](NilpotentPoly p, int i) {
        for (uint32_t m = 0; m < p.size(); m++)
            if ((m >> (i - 1)) & 1) p[m] = 0;
        return p;
    };
    for (int i = 1; i <= 4; i++) {
        auto lhs = partial(multiply(a, b), i);
        auto rhs = multiply(partial(a, i), drop(b, i)) + multiply(drop(a, i), partial(b, i));
        EXPECT_LT(lhs.max_abs_diff(rhs), 1e-12);
    }
}

TEST(NilpotentPoly, GeneratorAlgebra) {
    Rng r(8);
    auto F = rand_poly(r, 4);
    for (int i = 1; i <= 4; i++) {
        auto p = apply_generator(F, i, Generator::plus);
        auto m = apply_generator(F, i, Generator::minus);
        EXPECT_EQ(apply_generator(p, i, Generator::plus).max_abs(), 0.0);
        EXPECT_EQ(apply_generator(m, i, Generator::minus).max_abs(), 0.0);
        // s+ s- + s- s+ = 1
        auto anti = apply_generator(m, i, Generator::plus) + apply_generator(p, i, Generator::minus);
        EXPECT_LT(anti.max_abs_diff(F), 1e-15);
        // z squares to the identity
        auto zz = apply_generator(apply_generator(F, i, Generator::z), i, Generator::z);
        EXPECT_LT(zz.max_abs_diff(F), 1e-15);
        EXPECT_LT(m.max_abs_diff(partial(F, i)), 1e-15);
    }
}

TEST(NilpotentPoly, GeneratorsMatchStateEvolution) {
    // dF/dt from the generator action equals a finite difference of the state flow
    Rng r(9);
    PureState psi = rand_state(r, 4);
    std::vector<cplx> pp(4), pm(4);
    for (int q = 0; q < 4; q++) pp[q] = rand_c(r), pm[q] = rand_c(r);
    const double dt = 1e-6;
    std::vector<Mat2> mats;
    for (int q = 0; q < 4; q++) mats.push_back(generator_step(pp[q], pm[q], dt));
    PureState next = apply_local(psi, LocalOperation(mats, OpKind::invertible));
    NilpotentPoly F(4, psi.amps()), G(4, next.amps());
    NilpotentPoly rhs(4);
    for (int q = 1; q <= 4; q++) {
        rhs = rhs + apply_generator(F, q, Generator::plus) * (cplx(0, -1) * pm[q - 1]);
        rhs = rhs + apply_generator(F, q, Generator::minus) * (cplx(0, -1) * pp[q - 1]);
    }
    EXPECT_LT(((G - F) * (1.0 / dt)).max_abs_diff(rhs), 1e-5);
}
