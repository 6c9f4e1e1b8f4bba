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
#include <utility>
#include <vector>

#include "nilq/config.hpp"
#include "nilq/nilpotent.hpp"
#include "nilq/state.hpp"
#include "nilq/su_reduction.hpp"

namespace nilq {

enum class Family { general, special_s1, special_s2, special_s3, special_s4, degenerate };
std::string to_string(Family f);
Family family_from_string(const std::string &s);

// Which normal form the scaling step produced.
enum class ScalingPattern { eq12, eq16a, eq17, eq18, irregular };
std::string to_string(ScalingPattern p);
ScalingPattern scaling_pattern_from_string(const std::string &s);

using Mat4c = std::array<std::array<cplx, 4>, 4>;

struct SingularSpectrum {
    cplx d4;
    std::array<cplx, 4> gammas{};
    int zero_count = 0;
    // some branch of the closed-form eigenvalues reproduces the numeric ones
    bool closed_form_ok = false;
};

struct SlTanglemeter {
    NilpotentPoly poly;
    Family family = Family::degenerate;
    ScalingPattern pattern = ScalingPattern::irregular;
    // beta3, beta5, beta6 for the general family
    std::array<cplx, 3> betas{};
    // parameters of the special template otherwise
    std::vector<cplx> special_params;
    SingularSpectrum spectrum;
    int iterations = 0;
    double cubic_residual = 0;
    double linear_residual = 0;
    double fit_residual = 0;
    std::string diagnostic;
    // normalized final state
    PureState state;
};

// Rows target beta14, beta13, beta11, beta7; columns P+_1..P+_4.
Mat4c d4_matrix(const NilpotentPoly &f);
Mat4c d4_matrix(const SuTanglemeter &fc);
cplx det4(const Mat4c &m);

SingularSpectrum gammas(const NilpotentPoly &f, const FlowConfig &cfg = {});
SingularSpectrum gammas(const SuTanglemeter &fc, const FlowConfig &cfg = {});

// P-_j = -sum_i P+_i beta_ij
std::array<cplx, 4> feedback_p_minus(const NilpotentPoly &f, const std::array<cplx, 4> &p_plus);

struct ScalingResult {
    NilpotentPoly poly;
    LocalOperation op;
    ScalingPattern pattern = ScalingPattern::irregular;
    // max violation of the pattern's equations
    double residual = 0;
};
// tol_form bounds the leftover linear and cubic terms; defaults to tol_zero
ScalingResult apply_scaling(const NilpotentPoly &f, double tol_zero = 1e-9, double tol_form = 0);

// Wraps an arbitrary normalizable state as an su-tanglemeter without running the flow.
SuTanglemeter as_tanglemeter(const PureState &state, const FlowConfig &cfg = {});

std::pair<SlTanglemeter, LocalOperation> reduce_sl(const SuTanglemeter &fc, const FlowConfig &cfg = {});

}  // namespace nilq
