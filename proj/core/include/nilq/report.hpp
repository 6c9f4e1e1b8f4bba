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
#include <optional>
#include <string>
#include <vector>

#include "nilq/config.hpp"
#include "nilq/state.hpp"

namespace nilq {

// Plain-data record of one state's analysis; everything needed to rebuild it
// from JSON is stored here.
struct AnalysisReport {
    std::string source;
    int n = 0;
    std::vector<cplx> amps;
    FlowConfig config;
    std::optional<uint64_t> seed;

    bool su_converged = false;
    std::vector<cplx> su_coeffs;
    double su_population = 0;
    int su_iterations = 0;
    double su_residual = 0;

    std::optional<std::string> sl_family;
    std::string sl_pattern;
    std::vector<cplx> sl_coeffs;
    std::array<cplx, 3> sl_betas{};
    std::vector<cplx> sl_special_params;
    std::array<cplx, 4> gammas{};
    cplx d4;
    int zero_count = 0;
    int sl_iterations = 0;
    double sl_cubic_residual = 0;
    double sl_linear_residual = 0;
    double sl_fit_residual = 0;
    std::string sl_diagnostic;

    // n = 4
    std::optional<cplx> i2;
    std::array<cplx, 3> i4{}, i6{}, q_roots{};
    std::optional<cplx> chosen_q;
    std::optional<std::array<cplx, 3>> inv_betas;
    std::string inv_diagnostic;
    // n = 3
    std::optional<std::array<double, 3>> i123;
    std::optional<cplx> i45;
    std::optional<double> tau;

    std::optional<double> s1, nonunitarity, s2;
    std::optional<cplx> kappa4;
    std::optional<double> k4;

    std::optional<std::string> class_tag;
    std::vector<cplx> class_params;
    double class_residual = 0;
    std::vector<uint32_t> class_masks;

    std::vector<std::string> notes;
};

// Full pipeline. Throws NonConvergence only when the su-flow itself fails.
AnalysisReport analyze(const PureState &state, const FlowConfig &cfg = {}, const std::string &source = "");

std::string report_to_json(const AnalysisReport &r, int indent = 2);
AnalysisReport report_from_json(const std::string &text);

}  // namespace nilq
