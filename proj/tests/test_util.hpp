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

#pragma once

#include <cmath>
#include <vector>

#include "nilq/nilpotent.hpp"
#include "nilq/sampler.hpp"
#include "nilq/state.hpp"

namespace nilq::testing {

inline cplx rand_c(Rng &r) {
    double a = r.normal();
    double b = r.normal();
    return {a, b};
}

inline NilpotentPoly rand_poly(Rng &r, int n, double scale = 1.0) {
    NilpotentPoly f(n);
    for (std::size_t m = 0; m < f.size(); m++) f[m] = scale * rand_c(r);
    return f;
}

// Haar 2x2 unitary via QR-free parametrization: normalized Gaussian columns.
inline Mat2 rand_unitary(Rng &r) {
    cplx a = rand_c(r), b = rand_c(r);
    double k = 1.0 / std::sqrt(std::norm(a) + std::norm(b));
    a *= k, b *= k;
    cplx ph = std::polar(1.0, 2 * 3.141592653589793 * r.uniform());
    // [[a, -conj(b) ph], [b, conj(a) ph]]
    return {a, -std::conj(b) * ph, b, std::conj(a) * ph};
}

inline Mat2 rand_sl(Rng &r) {
    Mat2 m{rand_c(r), rand_c(r), rand_c(r), rand_c(r)};
    cplx d = std::sqrt(mat2_det(m));
    for (auto &x : m) x /= d;
    return m;
}

inline LocalOperation rand_local_unitary(Rng &r, int n) {
    std::vector<Mat2> ms;
    for (int q = 0; q < n; q++) ms.push_back(rand_unitary(r));
    return LocalOperation(ms, OpKind::unitary);
}

inline LocalOperation rand_local_sl(Rng &r, int n) {
    std::vector<Mat2> ms;
    for (int q = 0; q < n; q++) ms.push_back(rand_sl(r));
    return LocalOperation(ms, OpKind::invertible);
}

inline PureState rand_state(Rng &r, int n) {
    std::vector<cplx> a(std::size_t{1} << n);
    for (auto &x : a) x = rand_c(r);
    return PureState(n, a).normalized();
}

inline double rel(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Product of random single-qubit states over the given qubit blocks.
inline PureState product_of_blocks(Rng &r, int n, const std::vector<uint32_t> &blocks) {
    std::vector<cplx> a(std::size_t{1} << n, 0.0);
    // start from a single block state and tensor in the rest
    a.assign(std::size_t{1} << n, 0.0);
    std::vector<std::vector<cplx>> parts;
    for (uint32_t b : blocks) {
        int k = __builtin_popcount(b);
        std::vector<cplx> p(std::size_t{1} << k);
        for (auto &x : p) x = rand_c(r);
        parts.push_back(p);
    }
    for (std::size_t m = 0; m < a.size(); m++) {
        cplx v = 1;
        for (std::size_t t = 0; t < blocks.size(); t++) {
            std::size_t sub = 0;
            int bit = 0;
            for (int q = 0; q < n; q++)
                if ((blocks[t] >> q) & 1) sub |= ((m >> q) & 1) << bit++;
            v *= parts[t][sub];
        }
        a[m] = v;
    }
    return PureState(n, a).normalized();
}

}  // namespace nilq::testing
