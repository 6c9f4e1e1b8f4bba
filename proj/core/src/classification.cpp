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

#include "nilq/classification.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "nilq/errors.hpp"
#include "nilq/sl_reduction.hpp"

namespace nilq {

namespace {

constexpr std::array<ClassTag, 16> kTableOrder = {
    ClassTag::G_a,   ClassTag::G_b,   ClassTag::G_c,   ClassTag::G_d, ClassTag::G_e, ClassTag::LG2_a,
    ClassTag::LG2_b, ClassTag::LG2_c, ClassTag::LG1_a, ClassTag::LG1_b, ClassTag::S_a, ClassTag::S_b,
    ClassTag::S_c,   ClassTag::S_d,   ClassTag::S_e,   ClassTag::S_f};

const std::array<const char *, 17> kNames = {"G_a",   "G_b",   "G_c", "G_d", "G_e", "LG2_a",
                                             "LG2_b", "LG2_c", "LG1_a", "LG1_b", "S_a", "S_b",
                                             "S_c",   "S_d",   "S_e", "S_f", "other_point"};

void need(const std::vector<cplx> &p, std::size_t k) {
    if (p.size() != k) throw InvalidInput("wrong parameter count for class template");
}

}  // namespace

std::string to_string(ClassTag tag) {
    return kNames[static_cast<int>(tag)];
}

ClassTag class_tag_from_string(const std::string &s) {
    for (std::size_t k = 0; k < kNames.size(); k++)
        if (s == kNames[k]) return static_cast<ClassTag>(k);
    throw InvalidInput("unknown class tag '" + s + "'");
}

int class_arity(ClassTag tag) {
    switch (tag) {
        case ClassTag::G_a:
        case ClassTag::G_b:
        case ClassTag::G_c:
        case ClassTag::G_d:
        case ClassTag::G_e:
            return 3;
        case ClassTag::LG2_a:
        case ClassTag::LG2_b:
        case ClassTag::LG2_c:
            return 2;
        case ClassTag::LG1_a:
        case ClassTag::LG1_b:
            return 1;
        default:
            return 0;
    }
}

NilpotentPoly template_poly(ClassTag tag, const std::vector<cplx> &p) {
    NilpotentPoly f(4);
    need(p, static_cast<std::size_t>(class_arity(tag)));
    auto pairs = [&](cplx b3, cplx b5, cplx b6) {
        f[3] += b3, f[12] += b3;
        f[5] += b5, f[10] += b5;
        f[6] += b6, f[9] += b6;
    };
    switch (tag) {
        case ClassTag::G_a:
            pairs(p[0], p[1], p[2]);
            f[15] = 1.0 - p[0] * p[0] - p[1] * p[1] - p[2] * p[2];
            break;
        case ClassTag::G_b:
            pairs(p[0], p[1], p[2]);
            f[7] = 1, f[11] = -1, f[13] = 1, f[14] = -1;
            f[15] = 2.0 * (p[1] * p[2] - p[0] * p[2] + p[0] * p[1]);
            break;
        case ClassTag::G_c:
            // params: beta6, beta7, beta11
            f[3] = f[5] = f[10] = f[12] = 1;
            f[6] = f[9] = p[0];
            f[7] = p[1], f[14] = -p[1];
            f[11] = p[2], f[13] = -p[2];
            f[15] = 2;
            break;
        case ClassTag::G_d:
            // params: beta14, beta13, beta11
            f[3] = f[5] = f[10] = f[12] = f[9] = f[6] = 1;
            f[7] = p[0] + p[1] + p[2];
            f[11] = -p[0] + p[1] - p[2];
            f[13] = p[0] - p[1] - p[2];
            f[14] = -p[0] - p[1] + p[2];
            f[15] = 2;
            break;
        case ClassTag::G_e:
            f[7] = f[11] = f[13] = f[14] = 1;
            f[3] = p[0], f[5] = p[1], f[6] = p[2];
            break;
        case ClassTag::LG2_a:
            f[12] = 1;
            f[5] = f[10] = p[0];
            f[6] = f[9] = p[1];
            f[15] = 1.0 - p[0] * p[0] - p[1] * p[1];
            break;
        case ClassTag::LG2_b:
            f[3] = f[12] = 1;
            f[5] = f[10] = p[0];
            f[6] = f[9] = p[1];
            break;
        case ClassTag::LG2_c:
            f[13] = f[11] = f[14] = f[3] = 1;
            f[5] = p[0], f[6] = p[1];
            break;
        case ClassTag::LG1_a:
            f[3] = f[5] = 1;
            f[9] = f[6] = p[0];
            f[15] = 1.0 - p[0] * p[0];
            break;
        case ClassTag::LG1_b:
            f[11] = f[14] = f[3] = f[5] = 1;
            f[6] = p[0];
            break;
        case ClassTag::S_a:
            f[7] = f[13] = f[10] = 1;
            break;
        case ClassTag::S_b:
            f[7] = f[13] = f[11] = 1;
            break;
        case ClassTag::S_c:
            f[7] = f[13] = 1;
            break;
        case ClassTag::S_d:
            f[7] = 1;
            break;
        case ClassTag::S_e:
            f[12] = f[5] = f[6] = f[15] = 1;
            break;
        case ClassTag::S_f:
            f[3] = f[6] = f[5] = f[15] = 1;
            break;
        case ClassTag::other_point:
            throw InvalidInput("other_point has no template");
    }
    return f;
}

std::vector<std::pair<uint32_t, cplx>> template_fixed_slots(ClassTag tag) {
    switch (tag) {
        case ClassTag::G_b:
            return {{7, 1.0}, {11, -1.0}, {13, 1.0}, {14, -1.0}};
        case ClassTag::G_c:
            return {{3, 1.0}, {5, 1.0}, {10, 1.0}, {12, 1.0}, {15, 2.0}};
        case ClassTag::G_d:
            return {{3, 1.0}, {5, 1.0}, {6, 1.0}, {9, 1.0}, {10, 1.0}, {12, 1.0}, {15, 2.0}};
        case ClassTag::G_e:
            return {{7, 1.0}, {11, 1.0}, {13, 1.0}, {14, 1.0}};
        default:
            return {};
    }
}

TemplateFit fit_template(ClassTag tag, const NilpotentPoly &f) {
    if (f.n() != 4) throw InvalidInput("class templates are defined for n = 4");
    std::vector<cplx> p;
    auto avg = [&](int a, int b) { return (f[a] + f[b]) / 2.0; };
    switch (tag) {
        case ClassTag::G_a:
        case ClassTag::G_b:
            p = {avg(3, 12), avg(5, 10), avg(6, 9)};
            break;
        case ClassTag::G_c:
            p = {avg(6, 9), (f[7] - f[14]) / 2.0, (f[11] - f[13]) / 2.0};
            break;
        case ClassTag::G_d: {
            cplx c7 = f[7], c11 = f[11], c13 = f[13], c14 = f[14];
            p = {(c7 - c11 + c13 - c14) / 4.0, (c7 + c11 - c13 - c14) / 4.0, (c7 - c11 - c13 + c14) / 4.0};
            break;
        }
        case ClassTag::G_e:
            p = {f[3], f[5], f[6]};
            break;
        case ClassTag::LG2_a:
        case ClassTag::LG2_b:
            p = {avg(5, 10), avg(6, 9)};
            break;
        case ClassTag::LG2_c:
            p = {f[5], f[6]};
            break;
        case ClassTag::LG1_a:
            p = {avg(6, 9)};
            break;
        case ClassTag::LG1_b:
            p = {f[6]};
            break;
        case ClassTag::other_point:
            throw InvalidInput("other_point has no template");
        default:
            break;
    }
    TemplateFit fit;
    fit.residual = f.max_abs_diff(template_poly(tag, p));
    fit.params = std::move(p);
    return fit;
}

ClassLabel classify_poly(const NilpotentPoly &f, double tol_class) {
    if (f.n() != 4) throw InvalidInput("classification is defined for n = 4");
    ClassLabel best;
    bool found = false;
    for (ClassTag t : kTableOrder) {
        TemplateFit fit = fit_template(t, f);
        if (fit.residual >= tol_class) continue;
        // fewer parameters wins; Table order breaks ties
        if (!found || class_arity(t) < class_arity(best.tag)) {
            best.tag = t;
            best.params = fit.params;
            best.residual = fit.residual;
            found = true;
        }
    }
    for (uint32_t m = 1; m < 16; m++)
        if (std::abs(f[m]) >= tol_class) best.masks.push_back(m);
    if (!found) {
        best.tag = ClassTag::other_point;
        best.params.clear();
        best.residual = 0;
    }
    return best;
}

ClassLabel classify(const SlTanglemeter &tm, const SingularSpectrum &spectrum, double tol_class) {
    (void)spectrum;
    return classify_poly(tm.poly, tol_class);
}

std::vector<uint32_t> canonical_mask_set(const std::vector<uint32_t> &masks, int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; i++) perm[i] = i;
    std::vector<uint32_t> best;
    bool first = true;
    do {
        std::vector<uint32_t> img;
        for (uint32_t m : masks) {
            uint32_t r = 0;
            for (int i = 0; i < n; i++)
                if ((m >> i) & 1) r |= 1u << perm[i];
            img.push_back(r);
        }
        std::sort(img.begin(), img.end());
        if (first || img < best) best = img, first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace nilq
