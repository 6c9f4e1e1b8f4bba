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

#include <gtest/gtest.h>

#include <algorithm>

#include "nilq/classification.hpp"
#include "nilq/errors.hpp"
#include "nilq/sampler.hpp"
#include "nilq/sl_reduction.hpp"
#include "nilq/su_reduction.hpp"
#include "test_util.hpp"

using namespace nilq;
using namespace nilq::testing;

namespace {

const std::vector<ClassTag> kTags = {ClassTag::G_a,   ClassTag::G_b,   ClassTag::G_c,   ClassTag::G_d,
                                     ClassTag::G_e,   ClassTag::LG2_a, ClassTag::LG2_b, ClassTag::LG2_c,
                                     ClassTag::LG1_a, ClassTag::LG1_b, ClassTag::S_a,   ClassTag::S_b,
                                     ClassTag::S_c,   ClassTag::S_d,   ClassTag::S_e,   ClassTag::S_f};

uint32_t permute_mask(uint32_t m, const std::array<int, 4> &perm) {
    uint32_t r = 0;
    for (int q = 0; q < 4; q++)
        if ((m >> q) & 1) r |= 1u << perm[q];
    return r;
}

}  // namespace

TEST(ClassTag, NamesRoundTrip) {
    for (ClassTag t : kTags) EXPECT_EQ(class_tag_from_string(to_string(t)), t);
    EXPECT_EQ(class_tag_from_string(to_string(ClassTag::other_point)), ClassTag::other_point);
    EXPECT_THROW(class_tag_from_string("G_z"), InvalidInput);
    EXPECT_EQ(class_arity(ClassTag::G_a), 3);
}

TEST(Templates, FitRecoversParameters) {
    Rng r(1);
    for (ClassTag t : kTags) {
        std::vector<cplx> p;
        for (int k = 0; k < class_arity(t); k++) p.push_back({0.3 + r.uniform(), 0.5 * r.uniform() - 0.25});
        NilpotentPoly f = template_poly(t, p);
        TemplateFit fit = fit_template(t, f);
        EXPECT_LT(fit.residual, 1e-12) << to_string(t);
        ASSERT_EQ(fit.params.size(), p.size());
        for (std::size_t k = 0; k < p.size(); k++) EXPECT_LT(std::abs(fit.params[k] - p[k]), 1e-12) << to_string(t);
    }
    EXPECT_THROW(template_poly(ClassTag::G_a, {1.0}), InvalidInput);
}

TEST(Templates, ClassifyPolyIdentifiesEachTemplate) {
    Rng r(2);
    for (ClassTag t : kTags) {
        std::vector<cplx> p;
        for (int k = 0; k < class_arity(t); k++) p.push_back({0.3 + r.uniform(), 0.5 * r.uniform() - 0.25});
        ClassLabel lab = classify_poly(template_poly(t, p));
        EXPECT_EQ(lab.tag, t) << to_string(t) << " got " << to_string(lab.tag);
        EXPECT_LT(lab.residual, 1e-12);
    }
}

TEST(Templates, UnmatchedPolyIsOtherPoint) {
    NilpotentPoly f(4);
    f[3] = 0.4;
    f[7] = 0.9;
    f[13] = 0.2;
    ClassLabel lab = classify_poly(f);
    EXPECT_EQ(lab.tag, ClassTag::other_point);
    EXPECT_EQ(lab.masks, (std::vector<uint32_t>{3, 7, 13}));
}

TEST(Classify, GeneralStatesAreGa) {
    for (int i = 0; i < 5; i++) {
        auto tm = reduce_sl(reduce_su(haar_sample(4, 40 + i)).first).first;
        ClassLabel lab = classify(tm, tm.spectrum);
        EXPECT_EQ(lab.tag, ClassTag::G_a);
        ASSERT_EQ(lab.params.size(), 3u);
        for (int k = 0; k < 3; k++) EXPECT_LT(std::abs(lab.params[k] - tm.betas[k]), 1e-9);
    }
    auto ghz = reduce_sl(reduce_su(named_state("ghz4")).first).first;
    EXPECT_EQ(classify(ghz, ghz.spectrum).tag, ClassTag::G_a);
}

TEST(CanonicalMasks, InvariantUnderQubitRelabeling) {
    std::vector<uint32_t> ms = {12, 5, 6};
    auto base = canonical_mask_set(ms);
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        std::vector<uint32_t> pm;
        for (uint32_t m : ms) pm.push_back(permute_mask(m, perm));
        EXPECT_EQ(canonical_mask_set(pm), base);
    } while (std::next_permutation(perm.begin(), perm.end()));
    // a star and a path are different shapes
    EXPECT_NE(canonical_mask_set({3, 5, 9}), canonical_mask_set({3, 6, 12}));
}
