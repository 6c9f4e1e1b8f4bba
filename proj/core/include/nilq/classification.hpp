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
#include <string>
#include <vector>

#include "nilq/nilpotent.hpp"

namespace nilq {

struct SlTanglemeter;
struct SingularSpectrum;

enum class ClassTag {
    G_a, G_b, G_c, G_d, G_e,
    LG2_a, LG2_b, LG2_c,
    LG1_a, LG1_b,
    S_a, S_b, S_c, S_d, S_e, S_f,
    other_point
};

std::string to_string(ClassTag tag);
ClassTag class_tag_from_string(const std::string &s);
int class_arity(ClassTag tag);

struct ClassLabel {
    ClassTag tag = ClassTag::other_point;
    std::vector<cplx> params;
    double residual = 0;
    // masks of the surviving coefficients (filled for every label)
    std::vector<uint32_t> masks;
};

// Template polynomial of a class (n = 4) for the given parameters.
NilpotentPoly template_poly(ClassTag tag, const std::vector<cplx> &params);

struct TemplateFit {
    std::vector<cplx> params;
    double residual = 0;
};
// Least-squares parameters of `tag` for f and the max coefficient mismatch.
TemplateFit fit_template(ClassTag tag, const NilpotentPoly &f);

// Coefficients a template pins to fixed values (used to pick scalings).
std::vector<std::pair<uint32_t, cplx>> template_fixed_slots(ClassTag tag);

ClassLabel classify_poly(const NilpotentPoly &f, double tol_class = 1e-7);
ClassLabel classify(const SlTanglemeter &tm, const SingularSpectrum &spectrum, double tol_class = 1e-7);

// Masks of a point pattern up to relabeling of qubits (sorted canonical form).
std::vector<uint32_t> canonical_mask_set(const std::vector<uint32_t> &masks, int n = 4);

}  // namespace nilq
