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

#include <optional>
#include <utility>

#include "nilq/classification.hpp"
#include "nilq/config.hpp"
#include "nilq/sl_reduction.hpp"
#include "nilq/state.hpp"

namespace nilq {

struct MeasureReport {
    std::optional<double> s2;
    std::optional<double> s1;
    std::optional<double> nonunitarity;
    cplx kappa4;
    double k4 = 0;
    ClassLabel class_label;
};

double s2(const SlTanglemeter &tm);
double orbit_distance(const SlTanglemeter &a, const SlTanglemeter &b);
std::pair<double, double> s1_and_nonunitarity(const PureState &state, const FlowConfig &cfg = {});

// Printed 4x4 matrix built from su-canonic amplitudes.
Mat4c kappa4_matrix(const PureState &su_canonic);
cplx kappa4(const PureState &su_canonic);

struct K4Result {
    double k4 = 0;
    cplx kappa4;
    double a = 0;
    SuTanglemeter su;
};
// A = sum |psi_i / psi_0|^2, K4 = 4 sqrt(|kappa4| / A^4)
double k4_from_canonic(const PureState &su_canonic);
K4Result k4_full(const PureState &state, const FlowConfig &cfg = {});
double k4(const PureState &state, const FlowConfig &cfg = {});

}  // namespace nilq
