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

#include "nilq/measures.hpp"

#include <cmath>

#include "nilq/errors.hpp"
#include "nilq/invariants.hpp"
#include "nilq/su_reduction.hpp"

namespace nilq {

double s2(const SlTanglemeter &tm) {
    if (tm.family != Family::general) {
        throw DegenerateOrbit("s2 is defined for the general family only; use orbit_distance or the family report");
    }
    double s = 0;
    for (auto b : tm.betas) s += std::norm(b);
    return s;
}

double orbit_distance(const SlTanglemeter &a, const SlTanglemeter &b) {
    if (a.family != Family::general || b.family != Family::general) {
        throw DegenerateOrbit("orbit_distance needs two general-family tanglemeters");
    }
    double s = 0;
    for (int k = 0; k < 3; k++) s += std::norm(a.betas[k] - b.betas[k]);
    return s;
}

std::pair<double, double> s1_and_nonunitarity(const PureState &state, const FlowConfig &cfg) {
    if (state.n() != 4) throw InvalidInput("s1 requires n = 4");
    InvariantSet4 inv = invariants4(state.normalized(), cfg);
    CanonicAmplitudes ca = canonic_amplitudes(inv, cfg);
    // eight slots: every distinct value occupies two
    double s1 = 0;
    for (auto a : ca.distinct) s1 += 2 * std::norm(a);
    return {s1, std::abs(std::log(s1))};
}

Mat4c kappa4_matrix(const PureState &p) {
    if (p.n() != 4) throw InvalidInput("kappa4 requires n = 4");
    const cplx P15 = -p[15] * p[0] + p[6] * p[9] + p[3] * p[12] + p[5] * p[10];
    Mat4c m = {{
        {P15, 2.0 * p[6] * p[10], 2.0 * p[6] * p[12], 2.0 * p[10] * p[12]},
        {2.0 * p[5] * p[9], P15, 2.0 * p[5] * p[12], 2.0 * p[9] * p[12]},
        {2.0 * p[3] * p[9], 2.0 * p[3] * p[10], P15, 2.0 * p[9] * p[10]},
        {2.0 * p[3] * p[5], 2.0 * p[3] * p[6], 2.0 * p[5] * p[6], P15},
    }};
    return m;
}

cplx kappa4(const PureState &p) {
    if (std::abs(p[0]) < 1e-300) throw ZeroReferencePopulation("kappa4 needs a nonzero reference amplitude");
    cplx p8 = std::pow(p[0], 8);
    return det4(kappa4_matrix(p)) / p8;
}

double k4_from_canonic(const PureState &c) {
    double A = 0;
    for (std::size_t m = 0; m < c.size(); m++) A += std::norm(c[m] / c[0]);
    return 4 * std::sqrt(std::abs(kappa4(c)) / (A * A * A * A));
}

K4Result k4_full(const PureState &state, const FlowConfig &cfg) {
    if (state.n() != 4) throw InvalidInput("k4 requires n = 4");
    K4Result r;
    r.su = reduce_su(state, cfg).first;
    const PureState &c = r.su.canonic;
    r.kappa4 = kappa4(c);
    r.a = 0;
    for (std::size_t m = 0; m < c.size(); m++) r.a += std::norm(c[m] / c[0]);
    r.k4 = 4 * std::sqrt(std::abs(r.kappa4) / (r.a * r.a * r.a * r.a));
    return r;
}

double k4(const PureState &state, const FlowConfig &cfg) {
    return k4_full(state, cfg).k4;
}

}  // namespace nilq
