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

#include "nilq/state.hpp"

#include <bit>
#include <cmath>

#include "nilq/errors.hpp"
#include "nilq/su_reduction.hpp"

namespace nilq {

Mat2 mat2_identity() {
    return {1.0, 0.0, 0.0, 1.0};
}

Mat2 mat2_mul(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

cplx mat2_det(const Mat2 &a) {
    return a[0] * a[3] - a[1] * a[2];
}

Mat2 mat2_inverse(const Mat2 &a) {
    cplx d = mat2_det(a);
    if (std::abs(d) < 1e-300) throw InvalidInput("singular 2x2 matrix");
    return {a[3] / d, -a[1] / d, -a[2] / d, a[0] / d};
}

PureState::PureState(int n, std::vector<cplx> amps) : n_(n), amps_(std::move(amps)) {
    if (n < 1 || n > kMaxQubits) throw InvalidInput("qubit count out of range");
    if (amps_.size() != (std::size_t{1} << n)) throw InvalidInput("state must have 2^n amplitudes");
    if (norm2() <= 0) throw InvalidInput("zero state");
}

double PureState::norm2() const {
    double s = 0;
    for (auto a : amps_) s += std::norm(a);
    return s;
}

bool PureState::is_normalized() const {
    return std::abs(norm2() - 1.0) <= 1e-12;
}

PureState PureState::normalized() const {
    PureState r = *this;
    double k = 1.0 / std::sqrt(norm2());
    for (auto &a : r.amps_) a *= k;
    return r;
}

LocalOperation::LocalOperation(std::vector<Mat2> mats, OpKind kind) : mats_(std::move(mats)), kind_(kind) {
    if (mats_.empty() || mats_.size() > kMaxQubits) throw InvalidInput("bad local operation size");
    for (const auto &m : mats_) {
        switch (kind_) {
            case OpKind::unitary: {
                // M^dagger M = 1
                cplx a = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
                cplx b = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
                cplx d = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
                if (std::abs(a - 1.0) > 1e-10 || std::abs(b) > 1e-10 || std::abs(d - 1.0) > 1e-10) {
                    throw InvalidInput("matrix is not unitary");
                }
                break;
            }
            case OpKind::invertible:
                if (std::abs(mat2_det(m)) <= 1e-12) throw InvalidInput("matrix is not invertible");
                break;
            case OpKind::scaling:
                if (std::abs(m[1]) > 0 || std::abs(m[2]) > 0 || std::abs(m[0] * m[3] - 1.0) > 1e-10) {
                    throw InvalidInput("scaling matrix must be diag(e^-B, e^B)");
                }
                break;
        }
    }
}

LocalOperation LocalOperation::identity(int n, OpKind kind) {
    return LocalOperation(std::vector<Mat2>(n, mat2_identity()), kind);
}

LocalOperation LocalOperation::then(const LocalOperation &after) const {
    if (after.n() != n()) throw InvalidInput("local operation size mismatch");
    std::vector<Mat2> out(mats_.size());
    for (std::size_t q = 0; q < mats_.size(); q++) out[q] = mat2_mul(after.mats_[q], mats_[q]);
    OpKind k = (kind_ == after.kind_) ? kind_ : OpKind::invertible;
    if (k == OpKind::invertible) {
        // skip unitary/scaling re-validation
        LocalOperation r;
        r.mats_ = std::move(out);
        r.kind_ = k;
        return r;
    }
    return LocalOperation(std::move(out), k);
}

LocalOperation LocalOperation::inverse() const {
    LocalOperation r = *this;
    for (auto &m : r.mats_) m = mat2_inverse(m);
    return r;
}

NilpotentPoly nilpotential(const PureState &state, double epsilon_ref) {
    const cplx a0 = state[0];
    if (std::abs(a0) <= epsilon_ref * std::sqrt(state.norm2())) {
        throw ZeroReferencePopulation(
            "reference amplitude vanishes; apply a local rotation first (see prerotate)");
    }
    NilpotentPoly F(state.n());
    for (std::size_t m = 0; m < state.size(); m++) F[m] = state[m] / a0;
    F[0] = 1.0;
    return log(F);
}

bool is_bipartition_entangled(const PureState &state, uint32_t A, uint32_t B, double tol_criterion) {
    const uint32_t full = static_cast<uint32_t>(state.size()) - 1;
    if (A == 0 || B == 0 || (A & B) != 0 || (A | B) != full) {
        throw InvalidInput("invalid bipartition");
    }
    // the criterion is invariant under local unitaries, so rotate if needed
    PureState s = state.normalized();
    if (std::abs(s[0]) < 1e-3) s = prerotate(s);
    NilpotentPoly f = nilpotential(s);
    for (uint32_t m = 1; m <= full; m++) {
        if ((m & A) && (m & B) && std::abs(f[m]) > tol_criterion) return true;
    }
    return false;
}

PureState apply_single(const PureState &state, int qubit, const Mat2 &M) {
    if (qubit < 1 || qubit > state.n()) throw InvalidInput("qubit index out of range");
    std::vector<cplx> a = state.amps();
    const std::size_t b = std::size_t{1} << (qubit - 1);
    for (std::size_t m = 0; m < a.size(); m++) {
        if (m & b) continue;
        cplx a0 = a[m], a1 = a[m | b];
        a[m] = M[0] * a0 + M[1] * a1;
        a[m | b] = M[2] * a0 + M[3] * a1;
    }
    // bypass the zero-state check only if the op annihilated it
    return PureState(state.n(), std::move(a));
}

PureState apply_local(const PureState &state, const LocalOperation &op) {
    if (op.n() != state.n()) throw InvalidInput("local operation size mismatch");
    PureState s = state;
    for (int q = 1; q <= state.n(); q++) s = apply_single(s, q, op.mat(q));
    return s;
}

namespace {

PureState from_pairs(int n, std::initializer_list<std::pair<int, cplx>> entries) {
    std::vector<cplx> a(std::size_t{1} << n);
    for (auto [m, v] : entries) a[m] = v;
    return PureState(n, std::move(a)).normalized();
}

PureState graph_state(const std::vector<std::pair<int, int>> &edges) {
    std::vector<cplx> a(16);
    for (int m = 0; m < 16; m++) {
        int s = 0;
        for (auto [i, j] : edges) s += ((m >> i) & 1) * ((m >> j) & 1);
        a[m] = (s % 2) ? -1.0 : 1.0;
    }
    return PureState(4, std::move(a)).normalized();
}

}  // namespace

std::vector<std::string> named_state_names() {
    return {"ghz4", "ghz3", "w4", "w3", "cluster4", "cluster4_chain", "cluster4_box", "bellx2", "zero_n",
            "zero3", "zero4"};
}

PureState named_state(const std::string &name, int n_for_zero) {
    if (name == "ghz4") return from_pairs(4, {{0, 1.0}, {15, 1.0}});
    if (name == "ghz3") return from_pairs(3, {{0, 1.0}, {7, 1.0}});
    if (name == "w4") return from_pairs(4, {{1, 1.0}, {2, 1.0}, {4, 1.0}, {8, 1.0}});
    if (name == "w3") return from_pairs(3, {{1, 1.0}, {2, 1.0}, {4, 1.0}});
    if (name == "cluster4") return from_pairs(4, {{0, 1.0}, {3, 1.0}, {12, 1.0}, {15, -1.0}});
    // CZ chain 1-2-3-4 and CZ ring on |+>^4
    if (name == "cluster4_chain") return graph_state({{0, 1}, {1, 2}, {2, 3}});
    if (name == "cluster4_box") return graph_state({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    if (name == "bellx2") return from_pairs(4, {{0, 1.0}, {3, 1.0}, {12, 1.0}, {15, 1.0}});
    if (name == "zero_n" || name == "zero3" || name == "zero4") {
        int n = name == "zero3" ? 3 : name == "zero4" ? 4 : n_for_zero;
        std::vector<cplx> a(std::size_t{1} << n);
        a[0] = 1.0;
        return PureState(n, std::move(a));
    }
    throw InvalidInput("unknown named state '" + name + "'");
}

Mat2 single_qubit_rdm(const PureState &state, int qubit) {
    if (qubit < 1 || qubit > state.n()) throw InvalidInput("qubit index out of range");
    const std::size_t b = std::size_t{1} << (qubit - 1);
    Mat2 r{};
    for (std::size_t m = 0; m < state.size(); m++) {
        if (m & b) continue;
        cplx a0 = state[m], a1 = state[m | b];
        r[0] += a0 * std::conj(a0);
        r[1] += a0 * std::conj(a1);
        r[2] += a1 * std::conj(a0);
        r[3] += a1 * std::conj(a1);
    }
    return r;
}

double subset_purity(const PureState &state, uint32_t subset) {
    // M[a][c] with a = bits in subset, c = bits outside; purity = Tr((M M^dag)^2)
    const int n = state.n();
    std::vector<int> in, out;
    for (int q = 0; q < n; q++) ((subset >> q) & 1 ? in : out).push_back(q);
    const std::size_t da = std::size_t{1} << in.size(), dc = std::size_t{1} << out.size();
    std::vector<cplx> M(da * dc);
    const double k = 1.0 / state.norm2();
    for (std::size_t m = 0; m < state.size(); m++) {
        std::size_t a = 0, c = 0;
        for (std::size_t t = 0; t < in.size(); t++) a |= ((m >> in[t]) & 1) << t;
        for (std::size_t t = 0; t < out.size(); t++) c |= ((m >> out[t]) & 1) << t;
        M[a * dc + c] = state[m];
    }
    std::vector<cplx> rho(da * da);
    for (std::size_t i = 0; i < da; i++)
        for (std::size_t j = 0; j < da; j++) {
            cplx s = 0;
            for (std::size_t c = 0; c < dc; c++) s += M[i * dc + c] * std::conj(M[j * dc + c]);
            rho[i * da + j] = s * k;
        }
    double p = 0;
    for (auto v : rho) p += std::norm(v);
    return p;
}

}  // namespace nilq
