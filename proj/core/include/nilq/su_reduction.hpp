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

#include <cstdint>
#include <utility>
#include <vector>

#include "nilq/config.hpp"
#include "nilq/nilpotent.hpp"
#include "nilq/state.hpp"

namespace nilq {

struct SuTanglemeter {
    NilpotentPoly poly;
    double achieved_population = 0;
    int iterations = 0;
    double residual = 0;
    // normalized su-canonic state, amps[0] real positive
    PureState canonic;
    // index of the eigenframe start that won
    uint32_t start = 0;
};

// Rotates each qubit so its single-qubit reduced state is diagonal. Bit q of
// `choice` selects the subdominant eigenvector (instead of the dominant one)
// for qubit q+1 to be mapped onto |0>.
LocalOperation eigenframe_rotation(const PureState &state, uint32_t choice = 0);

// Bit flips that move the largest amplitude to mask 0.
LocalOperation flip_to_max(const PureState &state);

PureState prerotate(const PureState &state);
std::pair<PureState, LocalOperation> prerotate_with_op(const PureState &state, uint32_t choice = 0);

// Unitary step exp(-i G dt) for G = [[0, p_plus], [p_minus, 0]].
Mat2 generator_step(cplx p_plus, cplx p_minus, double dt);

// Local phases making the trilinear coefficients (n = 4) real positive; see
// source for the ordering used when some vanish.
LocalOperation phase_fixing(const NilpotentPoly &f, double tol);

struct SuTrace {
    // reference population after every accepted step, per start
    std::vector<std::vector<double>> populations;
};

std::pair<SuTanglemeter, LocalOperation> reduce_su(const PureState &state, const FlowConfig &cfg = {},
                                                   SuTrace *trace = nullptr);

enum class Group { su, sl };
int coset_dimension(int n, Group group);

}  // namespace nilq
