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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace nilq {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 8;

// Polynomial in commuting nilpotent generators s_1..s_n, (s_i)^2 = 0.
// coeffs[m] multiplies prod_{i in m} s_i, qubit 1 = least significant bit.
class NilpotentPoly {
   public:
    NilpotentPoly() = default;
    explicit NilpotentPoly(int n);
    NilpotentPoly(int n, std::vector<cplx> coeffs);

    static NilpotentPoly unit(int n);
    static NilpotentPoly monomial(int n, uint32_t mask, cplx c = 1.0);

    int n() const noexcept {
        return n_;
    }
    std::size_t size() const noexcept {
        return coeffs_.size();
    }
    const std::vector<cplx> &coeffs() const noexcept {
        return coeffs_;
    }
    cplx operator[](std::size_t m) const {
        return coeffs_[m];
    }
    cplx &operator[](std::size_t m) {
        return coeffs_[m];
    }

    NilpotentPoly operator+(const NilpotentPoly &o) const;
    NilpotentPoly operator-(const NilpotentPoly &o) const;
    NilpotentPoly operator*(cplx s) const;
    NilpotentPoly operator-() const;

    double max_abs() const;
    double max_abs_diff(const NilpotentPoly &o) const;

   private:
    int n_ = 0;
    std::vector<cplx> coeffs_;
};

enum class Generator { plus, minus, z };

NilpotentPoly multiply(const NilpotentPoly &a, const NilpotentPoly &b);
NilpotentPoly log(const NilpotentPoly &F);
NilpotentPoly exp(const NilpotentPoly &f);
// qubit index i is 1-based throughout the public API
NilpotentPoly partial(const NilpotentPoly &f, int i);
NilpotentPoly apply_generator(const NilpotentPoly &f, int i, Generator which);

}  // namespace nilq
