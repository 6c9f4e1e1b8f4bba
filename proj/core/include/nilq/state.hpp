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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nilq/nilpotent.hpp"

namespace nilq {

// Row-major 2x2: {m00, m01, m10, m11}.
using Mat2 = std::array<cplx, 4>;

Mat2 mat2_identity();
Mat2 mat2_mul(const Mat2 &a, const Mat2 &b);
Mat2 mat2_inverse(const Mat2 &a);
cplx mat2_det(const Mat2 &a);

class PureState {
   public:
    PureState() = default;
    PureState(int n, std::vector<cplx> amps);

    int n() const noexcept {
        return n_;
    }
    std::size_t size() const noexcept {
        return amps_.size();
    }
    const std::vector<cplx> &amps() const noexcept {
        return amps_;
    }
    cplx operator[](std::size_t m) const {
        return amps_[m];
    }
    cplx &operator[](std::size_t m) {
        return amps_[m];
    }

    double norm2() const;
    bool is_normalized() const;
    PureState normalized() const;

   private:
    int n_ = 0;
    std::vector<cplx> amps_;
};

enum class OpKind { unitary, invertible, scaling };

// One 2x2 matrix per qubit; mats[0] acts on qubit 1.
class LocalOperation {
   public:
    LocalOperation() = default;
    LocalOperation(std::vector<Mat2> mats, OpKind kind);

    static LocalOperation identity(int n, OpKind kind = OpKind::unitary);

    int n() const noexcept {
        return static_cast<int>(mats_.size());
    }
    OpKind kind() const noexcept {
        return kind_;
    }
    const std::vector<Mat2> &mats() const noexcept {
        return mats_;
    }
    const Mat2 &mat(int qubit) const {
        return mats_.at(qubit - 1);
    }

    // this first, then `after`
    LocalOperation then(const LocalOperation &after) const;
    LocalOperation inverse() const;

   private:
    std::vector<Mat2> mats_;
    OpKind kind_ = OpKind::unitary;
};

NilpotentPoly nilpotential(const PureState &state, double epsilon_ref = 1e-10);

// A, B are bitmasks of qubits (qubit 1 = bit 0).
bool is_bipartition_entangled(const PureState &state, uint32_t A, uint32_t B, double tol_criterion = 1e-9);

PureState apply_local(const PureState &state, const LocalOperation &op);
PureState apply_single(const PureState &state, int qubit, const Mat2 &m);

PureState named_state(const std::string &name, int n_for_zero = 4);
std::vector<std::string> named_state_names();

// Reduced density matrix of one qubit (row-major 2x2).
Mat2 single_qubit_rdm(const PureState &state, int qubit);
// Purity of the reduced state of the qubits in `subset`.
double subset_purity(const PureState &state, uint32_t subset);

}  // namespace nilq
