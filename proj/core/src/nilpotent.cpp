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

#include "nilq/nilpotent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nilq/errors.hpp"

namespace nilq {

namespace {

void check_n(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw InvalidInput("qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                           std::to_string(n));
    }
}

void check_same(const NilpotentPoly &a, const NilpotentPoly &b) {
    if (a.n() != b.n()) {
        throw InvalidInput("nilpotent polynomial dimension mismatch");
    }
}

void check_index(const NilpotentPoly &f, int i) {
    if (i < 1 || i > f.n()) {
        throw InvalidInput("qubit index " + std::to_string(i) + " out of range");
    }
}

}  // namespace

NilpotentPoly::NilpotentPoly(int n) : n_(n) {
    check_n(n);
    coeffs_.assign(std::size_t{1} << n, cplx{});
}

NilpotentPoly::NilpotentPoly(int n, std::vector<cplx> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
    check_n(n);
    if (coeffs_.size() != (std::size_t{1} << n)) {
        throw InvalidInput("coefficient array must have 2^n entries");
    }
}

NilpotentPoly NilpotentPoly::unit(int n) {
    NilpotentPoly r(n);
    r[0] = 1.0;
    return r;
}

NilpotentPoly NilpotentPoly::monomial(int n, uint32_t mask, cplx c) {
    NilpotentPoly r(n);
    if (mask >= r.size()) {
        throw InvalidInput("monomial mask out of range");
    }
    r[mask] = c;
    return r;
}

NilpotentPoly NilpotentPoly::operator+(const NilpotentPoly &o) const {
    check_same(*this, o);
    NilpotentPoly r = *this;
    for (std::size_t m = 0; m < size(); m++) r[m] += o[m];
    return r;
}

NilpotentPoly NilpotentPoly::operator-(const NilpotentPoly &o) const {
    check_same(*this, o);
    NilpotentPoly r = *this;
    for (std::size_t m = 0; m < size(); m++) r[m] -= o[m];
    return r;
}

NilpotentPoly NilpotentPoly::operator*(cplx s) const {
    NilpotentPoly r = *this;
    for (auto &c : r.coeffs_) c *= s;
    return r;
}

NilpotentPoly NilpotentPoly::operator-() const {
    return *this * cplx{-1.0};
}

double NilpotentPoly::max_abs() const {
    double r = 0;
    for (auto c : coeffs_) r = std::max(r, std::abs(c));
    return r;
}

double NilpotentPoly::max_abs_diff(const NilpotentPoly &o) const {
    check_same(*this, o);
    double r = 0;
    for (std::size_t m = 0; m < size(); m++) r = std::max(r, std::abs(coeffs_[m] - o[m]));
    return r;
}

NilpotentPoly multiply(const NilpotentPoly &a, const NilpotentPoly &b) {
    check_same(a, b);
    NilpotentPoly r(a.n());
    const uint32_t N = static_cast<uint32_t>(a.size());
    const uint32_t full = N - 1;
    for (uint32_t p = 0; p < N; p++) {
        if (a[p] == cplx{}) continue;
        // enumerate q as subsets of the complement of p
        const uint32_t comp = full & ~p;
        for (uint32_t q = comp;; q = (q - 1) & comp) {
            r[p | q] += a[p] * b[q];
            if (q == 0) break;
        }
    }
    return r;
}

NilpotentPoly log(const NilpotentPoly &F) {
    if (std::abs(F[0] - 1.0) > 1e-12) {
        throw InvalidInput("log requires unit constant term");
    }
    NilpotentPoly x = F;
    x[0] = 0;
    NilpotentPoly r(F.n());
    NilpotentPoly pw = NilpotentPoly::unit(F.n());
    for (int k = 1; k <= F.n(); k++) {
        pw = multiply(pw, x);
        const double s = (k % 2 == 1 ? 1.0 : -1.0) / k;
        for (std::size_t m = 0; m < r.size(); m++) r[m] += s * pw[m];
    }
    return r;
}

NilpotentPoly exp(const NilpotentPoly &f) {
    if (std::abs(f[0]) > 1e-12) {
        throw InvalidInput("exp requires zero constant term");
    }
    NilpotentPoly x = f;
    x[0] = 0;
    NilpotentPoly r = NilpotentPoly::unit(f.n());
    NilpotentPoly pw = NilpotentPoly::unit(f.n());
    double fact = 1;
    for (int k = 1; k <= f.n(); k++) {
        pw = multiply(pw, x);
        fact *= k;
        for (std::size_t m = 0; m < r.size(); m++) r[m] += pw[m] / fact;
    }
    return r;
}

NilpotentPoly partial(const NilpotentPoly &f, int i) {
    check_index(f, i);
    const uint32_t b = 1u << (i - 1);
    NilpotentPoly r(f.n());
    for (uint32_t m = 0; m < f.size(); m++) {
        if (!(m & b)) r[m] = f[m | b];
    }
    return r;
}

NilpotentPoly apply_generator(const NilpotentPoly &f, int i, Generator which) {
    check_index(f, i);
    const uint32_t b = 1u << (i - 1);
    switch (which) {
        case Generator::plus: {
            NilpotentPoly r(f.n());
            for (uint32_t m = 0; m < f.size(); m++) {
                if (!(m & b)) r[m | b] = f[m];
            }
            return r;
        }
        case Generator::minus:
            return partial(f, i);
        case Generator::z: {
            // -f + 2 s_i d_i f : flips sign of monomials without s_i
            NilpotentPoly r(f.n());
            for (uint32_t m = 0; m < f.size(); m++) r[m] = (m & b) ? f[m] : -f[m];
            return r;
        }
    }
    throw InvalidInput("unknown generator");
}

}  // namespace nilq
