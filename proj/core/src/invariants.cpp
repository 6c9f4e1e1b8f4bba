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

#include "nilq/invariants.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string_view>

#include "nilq/errors.hpp"

namespace nilq {

namespace {

// Sum over all letters of prod lower(pattern) * prod upper(pattern). Each
// pattern lists tensor indices left to right; the leftmost index is the
// highest qubit.
struct Contraction {
    std::vector<std::vector<int>> lower, upper;
    int letters = 0;
};

Contraction parse(std::initializer_list<std::string_view> lower, std::initializer_list<std::string_view> upper) {
    std::map<char, int> ids;
    Contraction c;
    auto conv = [&](std::string_view p) {
        std::vector<int> v;
        for (char ch : p) {
            auto [it, fresh] = ids.emplace(ch, static_cast<int>(ids.size()));
            v.push_back(it->second);
        }
        return v;
    };
    for (auto p : lower) c.lower.push_back(conv(p));
    for (auto p : upper) c.upper.push_back(conv(p));
    c.letters = static_cast<int>(ids.size());
    return c;
}

// Extended precision: the degree-6 sums cancel badly on far-from-normalized states.
struct xc {
    long double re = 0, im = 0;
};

inline xc xmul(xc a, xc b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

cplx contract(const Contraction &c, const std::vector<cplx> &lo, const std::vector<cplx> &up) {
    std::vector<xc> xl(lo.size()), xu(up.size());
    for (std::size_t m = 0; m < lo.size(); m++) xl[m] = {lo[m].real(), lo[m].imag()};
    for (std::size_t m = 0; m < up.size(); m++) xu[m] = {up[m].real(), up[m].imag()};
    xc total;
    const uint32_t N = 1u << c.letters;
    auto mask = [](const std::vector<int> &pat, uint32_t assign) {
        uint32_t m = 0;
        const int k = static_cast<int>(pat.size());
        for (int t = 0; t < k; t++) m |= ((assign >> pat[t]) & 1u) << (k - 1 - t);
        return m;
    };
    for (uint32_t a = 0; a < N; a++) {
        xc term{1, 0};
        bool zero = false;
        for (const auto &p : c.lower) {
            const xc &v = xl[mask(p, a)];
            if (v.re == 0 && v.im == 0) {
                zero = true;
                break;
            }
            term = xmul(term, v);
        }
        if (zero) continue;
        for (const auto &p : c.upper) term = xmul(term, xu[mask(p, a)]);
        total.re += term.re;
        total.im += term.im;
    }
    return {static_cast<double>(total.re), static_cast<double>(total.im)};
}

const Contraction &c_i2() {
    static const Contraction c = parse({"ijkl"}, {"ijkl"});
    return c;
}

const std::array<Contraction, 3> &c_i4() {
    static const std::array<Contraction, 3> c = {
        parse({"ijkl", "opmn"}, {"ijmn", "opkl"}),
        parse({"ikjl", "ompn"}, {"imjn", "okpl"}),
        parse({"iklj", "omnp"}, {"imnj", "oklp"}),
    };
    return c;
}

// (first, second) products for I6_12, I6_23, I6_13; the raised factors are shared
const std::array<std::pair<Contraction, Contraction>, 3> &c_i6() {
    static const std::array<std::pair<Contraction, Contraction>, 3> c = {
        std::pair{parse({"ingd", "mrko", "sjph"}, {"mrgd", "inph", "sjko"}),
                  parse({"ingo", "mrkh", "sjpd"}, {"mrgd", "inph", "sjko"})},
        std::pair{parse({"ijpo", "mngh", "srkd"}, {"mrgd", "inph", "sjko"}),
                  parse({"ijpd", "mngo", "srkh"}, {"mrgd", "inph", "sjko"})},
        std::pair{parse({"ijkh", "mnpd", "srgo"}, {"mrgd", "inph", "sjko"}),
                  parse({"ijgh", "mnkd", "srpo"}, {"mrgd", "inph", "sjko"})},
    };
    return c;
}

double rel_dev(cplx a, cplx b, double scale) {
    return std::abs(a - b) / std::max(scale, 1e-300);
}

}  // namespace

std::vector<cplx> raise_indices(const PureState &state) {
    if (state.n() != 3 && state.n() != 4) throw InvalidInput("raise_indices supports n = 3 or 4");
    const std::size_t N = state.size();
    std::vector<cplx> r(N);
    for (std::size_t m = 0; m < N; m++) {
        double s = (std::popcount(m) % 2) ? -1.0 : 1.0;
        r[m] = s * state[(N - 1) ^ m];
    }
    return r;
}

InvariantSet4 raw_invariants4(const PureState &state) {
    if (state.n() != 4) throw InvalidInput("invariants4 requires n = 4");
    const auto &lo = state.amps();
    const auto up = raise_indices(state);
    InvariantSet4 inv;
    inv.norm2 = state.norm2();
    inv.i2 = contract(c_i2(), lo, up);
    for (int k = 0; k < 3; k++) inv.i4[k] = contract(c_i4()[k], lo, up);
    for (int k = 0; k < 3; k++) {
        inv.i6[k] = (contract(c_i6()[k].first, lo, up) - contract(c_i6()[k].second, lo, up)) / 6.0;
    }
    return inv;
}

std::array<cplx, 3> solve_q_cubic(const InvariantSet4 &inv) {
    // (I6_13 + Q)(I6_23 + Q)(I6_12 + Q) = (I2 / 2)^3 Q^2
    const cplx a = inv.i6[2], b = inv.i6[1], c = inv.i6[0];
    const cplx p0 = inv.i2 / 2.0;
    const cplx c2 = a + b + c - p0 * p0 * p0;
    const cplx c1 = a * b + b * c + a * c;
    const cplx c0 = a * b * c;
    Eigen::Matrix3cd comp;
    comp << -c2, -c1, -c0, 1, 0, 0, 0, 1, 0;
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(comp, false);
    std::array<cplx, 3> r;
    for (int k = 0; k < 3; k++) {
        cplx x = es.eigenvalues()(k);
        // Newton polish
        for (int it = 0; it < 3; it++) {
            cplx f = ((x + c2) * x + c1) * x + c0;
            cplx d = (3.0 * x + 2.0 * c2) * x + c1;
            if (std::abs(d) < 1e-300) break;
            cplx nx = x - f / d;
            if (std::abs(((nx + c2) * nx + c1) * nx + c0) >= std::abs(f)) break;
            x = nx;
        }
        r[k] = x;
    }
    // stable order: by real part, then imaginary
    std::sort(r.begin(), r.end(), [](cplx u, cplx v) {
        if (std::abs(u.real() - v.real()) > 1e-12 * (1 + std::abs(u) + std::abs(v))) return u.real() < v.real();
        return u.imag() < v.imag();
    });
    return r;
}

PureState g_state(cplx A, cplx B, cplx C, cplx D) {
    std::vector<cplx> a(16);
    a[0] = a[15] = A;
    a[3] = a[12] = B;
    a[5] = a[10] = C;
    a[6] = a[9] = D;
    return PureState(4, std::move(a));
}

std::vector<CanonicCandidate> canonic_candidates(const InvariantSet4 &inv, double tol) {
    std::vector<CanonicCandidate> out;
    const cplx p0 = inv.i2 / 2.0;
    const double s2 = std::max(inv.norm2, 1e-300);
    if (std::abs(p0) < 1e-14 * s2) return out;
    const auto roots = solve_q_cubic(inv);
    for (int r = 0; r < 3; r++) {
        // skip repeated roots
        bool dup = false;
        for (int t = 0; t < r; t++) dup |= std::abs(roots[t] - roots[r]) < 1e-12 * s2 * s2 * s2;
        if (dup) continue;
        const cplx Q = roots[r];
        std::array<cplx, 3> base;
        for (int k = 0; k < 3; k++) base[k] = std::sqrt((inv.i6[k] + Q) / p0);
        for (int pat = 0; pat < 8; pat++) {
            std::array<int, 3> sg{(pat & 1) ? -1 : 1, (pat & 2) ? -1 : 1, (pat & 4) ? -1 : 1};
            const cplx p1 = double(sg[0]) * base[0], p2 = double(sg[1]) * base[1], p3 = double(sg[2]) * base[2];
            // cheap filter: p1 p2 p3 must equal Q
            if (std::abs(p1 * p2 * p3 - Q) > 1e-6 * s2 * s2 * s2) continue;
            CanonicCandidate c;
            c.q = Q;
            c.signs = sg;
            c.sq = {(p0 + p1 + p2 + p3) / 4.0, (p0 + p1 - p2 - p3) / 4.0, (p0 - p1 + p2 - p3) / 4.0,
                    (p0 - p1 - p2 + p3) / 4.0};
            c.norm2 = 0;
            for (auto x : c.sq) c.norm2 += 2 * std::abs(x);
            if (c.norm2 < 1e-300) continue;
            PureState g = g_state(std::sqrt(c.sq[0]), std::sqrt(c.sq[1]), std::sqrt(c.sq[2]), std::sqrt(c.sq[3]));
            InvariantSet4 gi = raw_invariants4(g);
            double dev = rel_dev(gi.i2, inv.i2, s2);
            for (int k = 0; k < 3; k++) {
                dev = std::max(dev, rel_dev(gi.i4[k], inv.i4[k], s2 * s2));
                dev = std::max(dev, rel_dev(gi.i6[k], inv.i6[k], s2 * s2 * s2));
            }
            c.mismatch = dev;
            if (dev <= tol) out.push_back(c);
        }
    }
    return out;
}

InvariantSet4 invariants4(const PureState &state, const FlowConfig &cfg) {
    InvariantSet4 inv = raw_invariants4(state);
    (void)cfg;
    inv.q_roots = solve_q_cubic(inv);
    inv.candidates = canonic_candidates(inv);
    if (inv.candidates.empty()) {
        inv.valid = false;
        inv.diagnostic = std::abs(inv.i2) < 1e-14 * inv.norm2
                             ? "I2 vanishes: canonic reconstruction undefined (nullcone orbit)"
                             : "no root/sign combination reproduces the invariants (special orbit)";
        return inv;
    }
    // root whose reconstruction norm is closest to the input norm; ties go to the
    // frame with the largest reference amplitude
    int best = 0;
    auto dist = [&](const CanonicCandidate &c) { return std::abs(c.norm2 - inv.norm2); };
    for (int k = 1; k < static_cast<int>(inv.candidates.size()); k++) {
        const auto &c = inv.candidates[k];
        const auto &b = inv.candidates[best];
        double dc = dist(c), db = dist(b);
        if (dc < db - 1e-9 * inv.norm2) {
            best = k;
        } else if (std::abs(dc - db) <= 1e-9 * inv.norm2 && std::abs(c.sq[0]) > std::abs(b.sq[0]) * (1 + 1e-9)) {
            best = k;
        }
    }
    inv.chosen = best;
    inv.chosen_q = inv.candidates[best].q;
    inv.valid = true;
    return inv;
}

std::array<cplx, 3> candidate_betas(const CanonicCandidate &c) {
    return {std::sqrt(c.sq[1] / c.sq[0]), std::sqrt(c.sq[2] / c.sq[0]), std::sqrt(c.sq[3] / c.sq[0])};
}

CanonicAmplitudes canonic_amplitudes(const InvariantSet4 &inv, const FlowConfig &cfg) {
    if (!inv.valid || inv.chosen < 0) throw DegenerateOrbit("canonic amplitudes undefined: " + inv.diagnostic);
    const auto &c = inv.candidates[inv.chosen];
    if (std::abs(c.sq[0]) <= cfg.tol_radicand * inv.norm2) {
        throw DegenerateOrbit("reference canonic amplitude vanishes");
    }
    CanonicAmplitudes out;
    const cplx A = std::sqrt(c.sq[0]);
    const auto b = candidate_betas(c);
    out.distinct = {A, A * b[0], A * b[1], A * b[2]};
    out.state = g_state(out.distinct[0], out.distinct[1], out.distinct[2], out.distinct[3]);
    out.q = c.q;
    return out;
}

std::array<cplx, 3> betas_from_invariants(const InvariantSet4 &inv, const FlowConfig &cfg) {
    if (!inv.valid || inv.chosen < 0) throw DegenerateOrbit("beta ratios undefined: " + inv.diagnostic);
    const auto &c = inv.candidates[inv.chosen];
    if (std::abs(c.sq[0]) <= cfg.tol_radicand * inv.norm2) {
        throw DegenerateOrbit("reference canonic amplitude vanishes");
    }
    return candidate_betas(c);
}

InvariantSet3 invariants3(const PureState &state) {
    if (state.n() != 3) throw InvalidInput("invariants3 requires n = 3");
    const auto &lo = state.amps();
    std::vector<cplx> cj(lo.size());
    for (std::size_t m = 0; m < lo.size(); m++) cj[m] = std::conj(lo[m]);
    static const Contraction c1 = parse({"kij", "pmn"}, {"pij", "kmn"});
    static const Contraction c2 = parse({"ikj", "mpn"}, {"ipj", "mkn"});
    static const Contraction c3 = parse({"ijk", "mnp"}, {"ijp", "mnk"});
    static const Contraction c45 = parse({"ijk", "mnp"}, {"ijp", "mnk"});
    InvariantSet3 r;
    r.i1 = contract(c1, lo, cj).real();
    r.i2 = contract(c2, lo, cj).real();
    r.i3 = contract(c3, lo, cj).real();
    r.i45 = contract(c45, lo, raise_indices(state));
    r.tau = 2 * std::abs(r.i45);
    return r;
}

}  // namespace nilq
