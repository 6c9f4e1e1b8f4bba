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
#include <string>
#include <vector>

#include "nilq/config.hpp"
#include "nilq/state.hpp"

namespace nilq {

// One G-type canonic state consistent with a set of invariants.
struct CanonicCandidate {
    cplx q;
    std::array<int, 3> signs{};
    // squares of the four distinct amplitudes: psi_0000, psi_0011, psi_0101, psi_0110
    std::array<cplx, 4> sq{};
    // 2 * sum |sq|, the norm of the eight-slot state
    double norm2 = 0;
    // max relative deviation of the candidate's recomputed invariants
    double mismatch = 0;
};

struct InvariantSet4 {
    cplx i2;
    // I4_12, I4_13, I4_14
    std::array<cplx, 3> i4{};
    // I6_12, I6_23, I6_13
    std::array<cplx, 3> i6{};
    std::array<cplx, 3> q_roots{};
    cplx chosen_q;
    bool valid = false;
    std::string diagnostic;
    // squared norm of the input state
    double norm2 = 0;
    std::vector<CanonicCandidate> candidates;
    int chosen = -1;
};

struct InvariantSet3 {
    double i1 = 0, i2 = 0, i3 = 0;
    cplx i45;
    double tau = 0;
};

// psi^{m} = (-1)^{popcount m} psi_{~m}
std::vector<cplx> raise_indices(const PureState &state);

// The seven contractions only, no root selection.
InvariantSet4 raw_invariants4(const PureState &state);
InvariantSet4 invariants4(const PureState &state, const FlowConfig &cfg = {});
InvariantSet3 invariants3(const PureState &state);

// Three roots of the cubic in Q.
std::array<cplx, 3> solve_q_cubic(const InvariantSet4 &inv);
// All (root, sign) combinations whose recomputed invariants match.
std::vector<CanonicCandidate> canonic_candidates(const InvariantSet4 &inv, double tol = 1e-7);

struct CanonicAmplitudes {
    // A, B, C, D: psi_0000 = psi_1111, psi_0011 = psi_1100, psi_0101 = psi_1010, psi_0110 = psi_1001
    std::array<cplx, 4> distinct{};
    PureState state;
    cplx q;
};

CanonicAmplitudes canonic_amplitudes(const InvariantSet4 &inv, const FlowConfig &cfg = {});
std::array<cplx, 3> betas_from_invariants(const InvariantSet4 &inv, const FlowConfig &cfg = {});
// beta triple of a candidate: principal sqrt of sq[k] / sq[0]
std::array<cplx, 3> candidate_betas(const CanonicCandidate &c);

// G-type state A(|0000>+|1111>) + B(..3, 12) + C(..5, 10) + D(..6, 9).
PureState g_state(cplx A, cplx B, cplx C, cplx D);

}  // namespace nilq
