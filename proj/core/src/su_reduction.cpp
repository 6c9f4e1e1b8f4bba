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

#include "nilq/su_reduction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>

#include "nilq/errors.hpp"

namespace nilq {

namespace {

double population(const PureState &s) {
    return std::norm(s[0]) / s.norm2();
}

double linear_residual(const PureState &s) {
    double r = 0;
    for (int q = 0; q < s.n(); q++) r = std::max(r, std::abs(s[std::size_t{1} << q] / s[0]));
    return r;
}

PureState su_step(const PureState &s, double dt, std::vector<Mat2> *mats) {
    PureState out = s;
    for (int q = 1; q <= s.n(); q++) {
        cplx beta = s[std::size_t{1} << (q - 1)] / s[0];
        cplx pm = cplx(0, -1) * beta;
        Mat2 M = generator_step(std::conj(pm), pm, dt);
        out = apply_single(out, q, M);
        (*mats)[q - 1] = M;
    }
    return out.normalized();
}

struct StartResult {
    PureState state;
    LocalOperation op;
    int iterations = 0;
    double residual = 0;
};

// Flow from one start; throws NonConvergence.
StartResult run_flow(PureState psi, LocalOperation op, const FlowConfig &cfg, std::vector<double> *pops) {
    const int n = psi.n();
    double dt = cfg.dt0;
    int it = 0;
    double r = linear_residual(psi);
    std::vector<Mat2> mats(n);
    auto accept = [&](PureState &&next) {
        psi = std::move(next);
        op = op.then(LocalOperation(mats, OpKind::unitary));
        if (pops) pops->push_back(population(psi));
    };
    if (pops) pops->push_back(population(psi));
    double r_check = r;
    while (r >= cfg.tol_linear) {
        if (++it > cfg.max_iters) throw NonConvergence("su-flow did not converge", r, it - 1);
        // near flat maxima the population gain drops below resolution; let the
        // residual-driven polish finish the job
        if (it % 2000 == 0) {
            if (r > 0.9 * r_check) break;
            r_check = r;
        }
        double p0 = population(psi);
        while (true) {
            PureState next = su_step(psi, dt, &mats);
            // allow round-off level slack once the increase is below resolution
            if (population(next) >= p0 * (1 - 1e-15)) {
                accept(std::move(next));
                dt = std::min(dt * 1.2, cfg.dt_max);
                break;
            }
            dt *= 0.5;
            if (dt < 1e-14) throw NonConvergence("su-flow step size underflow", r, it);
        }
        r = linear_residual(psi);
    }
    // polish: keep going while the residual still drops
    dt = std::max(dt, cfg.dt0);
    for (int k = 0; k < cfg.polish_iters && r > cfg.tol_polish; k++) {
        PureState next = su_step(psi, dt, &mats);
        double rn = linear_residual(next);
        if (rn < r) {
            accept(std::move(next));
            r = rn;
            it++;
        } else {
            dt *= 0.5;
            if (dt < 1e-6) break;
        }
    }
    if (r >= cfg.tol_linear) throw NonConvergence("su-flow stalled", r, it);
    return {psi, op, it, r};
}

std::vector<uint32_t> phase_order(int n) {
    if (n == 4) return {14, 13, 11, 7, 15, 3, 5, 6, 9, 10, 12};
    std::vector<uint32_t> ms;
    for (uint32_t m = 1; m < (1u << n); m++)
        if (std::popcount(m) >= 2) ms.push_back(m);
    auto key = [n](uint32_t m) {
        int p = std::popcount(m);
        int tier = p == n - 1 ? 0 : p == n ? 1 : 2;
        return std::tuple(tier, p, m);
    };
    std::sort(ms.begin(), ms.end(), [&](uint32_t a, uint32_t b) { return key(a) < key(b); });
    return ms;
}

}  // namespace

Mat2 generator_step(cplx p_plus, cplx p_minus, double dt) {
    cplx w = std::sqrt(p_plus * p_minus);
    cplx x = w * dt;
    cplx c, s;
    if (std::abs(x) < 1e-4) {
        cplx x2 = x * x;
        c = 1.0 - x2 / 2.0 + x2 * x2 / 24.0;
        s = dt * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    } else {
        c = std::cos(x);
        s = std::sin(x) / w;
    }
    const cplx mi(0, -1);
    return {c, mi * s * p_plus, mi * s * p_minus, c};
}

LocalOperation eigenframe_rotation(const PureState &state, uint32_t choice) {
    std::vector<Mat2> mats;
    for (int q = 1; q <= state.n(); q++) {
        Mat2 rho = single_qubit_rdm(state, q);
        double a = rho[0].real(), d = rho[3].real();
        cplx b = rho[1];
        double lam = 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
        cplx v0, v1;
        if (std::abs(b) > 1e-14 * (a + d)) {
            v0 = b;
            v1 = lam - a;
            double k = 1.0 / std::sqrt(std::norm(v0) + std::norm(v1));
            v0 *= k;
            v1 *= k;
        } else if (a >= d) {
            v0 = 1.0, v1 = 0.0;
        } else {
            v0 = 0.0, v1 = 1.0;
        }
        // rows: dominant^dagger, subdominant^dagger
        Mat2 U{std::conj(v0), std::conj(v1), -v1, v0};
        if ((choice >> (q - 1)) & 1) U = {U[2], U[3], U[0], U[1]};
        mats.push_back(U);
    }
    return LocalOperation(std::move(mats), OpKind::unitary);
}

LocalOperation flip_to_max(const PureState &state) {
    std::size_t best = 0;
    for (std::size_t m = 1; m < state.size(); m++)
        if (std::abs(state[m]) > std::abs(state[best])) best = m;
    std::vector<Mat2> mats;
    for (int q = 0; q < state.n(); q++) {
        if ((best >> q) & 1)
            mats.push_back({0.0, 1.0, 1.0, 0.0});
        else
            mats.push_back(mat2_identity());
    }
    return LocalOperation(std::move(mats), OpKind::unitary);
}

std::pair<PureState, LocalOperation> prerotate_with_op(const PureState &state, uint32_t choice) {
    LocalOperation op = eigenframe_rotation(state, choice);
    PureState s = apply_local(state, op);
    double mx = 0;
    for (auto a : s.amps()) mx = std::max(mx, std::abs(a));
    if (std::abs(s[0]) < std::pow(2.0, -0.5 * s.n()) * mx) {
        LocalOperation f = flip_to_max(s);
        s = apply_local(s, f);
        op = op.then(f);
    }
    return {s, op};
}

PureState prerotate(const PureState &state) {
    return prerotate_with_op(state, 0).first;
}

LocalOperation phase_fixing(const NilpotentPoly &f, double tol) {
    const int n = f.n();
    std::vector<uint32_t> chosen;
    std::vector<double> args;
    Eigen::MatrixXd rows(0, n);
    int rank = 0;
    for (uint32_t m : phase_order(n)) {
        if (std::abs(f[m]) <= tol) continue;
        Eigen::MatrixXd trial(rows.rows() + 1, n);
        trial.topRows(rows.rows()) = rows;
        for (int q = 0; q < n; q++) trial(rows.rows(), q) = (m >> q) & 1;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(trial);
        if (lu.rank() <= rank) continue;
        rows = trial;
        rank = static_cast<int>(lu.rank());
        chosen.push_back(m);
        args.push_back(std::arg(f[m]));
        if (rank == n) break;
    }
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
    if (!chosen.empty()) {
        Eigen::VectorXd rhs(chosen.size());
        for (std::size_t k = 0; k < chosen.size(); k++) rhs(k) = -args[k];
        theta = rows.completeOrthogonalDecomposition().solve(rhs);
    }
    // constraints that all share a popcount p leave a uniform 2 pi j / p shift
    // (Z3 from the four trilinear terms at n = 4, Z2 from the pairs at n = 3);
    // pin it with the first significant coefficient of another order
    const int p = chosen.empty() ? 0 : std::popcount(chosen.front());
    const bool uniform = rank == n && p >= 2 &&
                         std::all_of(chosen.begin(), chosen.end(), [p](uint32_t m) { return std::popcount(m) == p; });
    if (uniform) {
        const double pi = std::numbers::pi;
        bool pinned = false;
        for (uint32_t m : phase_order(n)) {
            if (pinned) break;
            if (std::popcount(m) == p || std::abs(f[m]) <= tol) continue;
            double base = std::arg(f[m]);
            for (int q = 0; q < n; q++)
                if ((m >> q) & 1) base += theta(q);
            for (int j = 0; j < p; j++) {
                double a = std::remainder(base + 2 * pi * j * std::popcount(m) / p, 2 * pi);
                if (a > -pi / p && a <= pi / p + 1e-12) {
                    theta.array() += 2 * pi * j / p;
                    pinned = true;
                    break;
                }
            }
        }
    }
    std::vector<Mat2> mats;
    for (int q = 0; q < n; q++) mats.push_back({1.0, 0.0, 0.0, std::polar(1.0, theta(q))});
    return LocalOperation(std::move(mats), OpKind::unitary);
}

std::pair<SuTanglemeter, LocalOperation> reduce_su(const PureState &state, const FlowConfig &cfg,
                                                   SuTrace *trace) {
    const int n = state.n();
    PureState input = state.normalized();
    const uint32_t nstarts = cfg.su_starts > 0 ? std::min<uint32_t>(cfg.su_starts, 1u << n) : (1u << n);
    std::optional<StartResult> best;
    uint32_t best_start = 0;
    std::optional<NonConvergence> last_err;
    for (uint32_t c = 0; c < nstarts; c++) {
        auto [s, op] = prerotate_with_op(input, c);
        if (population(s) < 1e-20) continue;
        std::vector<double> *pops = nullptr;
        if (trace) pops = &trace->populations.emplace_back();
        try {
            StartResult r = run_flow(s, op, cfg, pops);
            if (!best || population(r.state) > population(best->state) + 1e-12) {
                best = std::move(r);
                best_start = c;
            }
        } catch (const NonConvergence &e) {
            last_err = e;
        }
    }
    // maximally mixed qubits have no preferred frame; also try the Hadamard frame on them
    std::vector<int> flat;
    for (int q = 1; q <= n; q++) {
        Mat2 rho = single_qubit_rdm(input, q);
        if (std::abs(rho[0] - rho[3]) < 1e-8 && std::abs(rho[1]) < 1e-8) flat.push_back(q);
    }
    const double h = std::numbers::sqrt2 / 2;
    for (uint32_t sub = 1; sub < (1u << flat.size()); sub++) {
        std::vector<Mat2> hm(n, mat2_identity());
        for (std::size_t k = 0; k < flat.size(); k++)
            if ((sub >> k) & 1) hm[flat[k] - 1] = {h, h, h, -h};
        LocalOperation hop(std::move(hm), OpKind::unitary);
        auto [s, op] = prerotate_with_op(apply_local(input, hop), 0);
        if (population(s) < 1e-20) continue;
        std::vector<double> *pops = nullptr;
        if (trace) pops = &trace->populations.emplace_back();
        try {
            StartResult r = run_flow(s, hop.then(op), cfg, pops);
            if (!best || population(r.state) > population(best->state) + 1e-12) {
                best = std::move(r);
                best_start = nstarts + sub - 1;
            }
        } catch (const NonConvergence &e) {
            last_err = e;
        }
    }
    if (!best) {
        if (last_err) throw *last_err;
        throw ZeroReferencePopulation("no usable start for su-reduction");
    }
    // stationary points that are not maxima (e.g. saddles reached exactly by a
    // start) do not move under the flow; nudge and keep any strict improvement
    for (int round = 0; round < 8; round++) {
        bool improved = false;
        for (int dir = 0; dir < 2 && !improved; dir++) {
            std::vector<Mat2> km;
            for (int q = 0; q < n; q++) {
                cplx pm = 1e-3 * std::polar(1.0, 0.7 * (q + 1) + 1.9 * dir);
                km.push_back(generator_step(std::conj(pm), pm, 1.0));
            }
            LocalOperation kick(std::move(km), OpKind::unitary);
            try {
                StartResult r = run_flow(apply_local(best->state, kick), best->op.then(kick), cfg, nullptr);
                if (population(r.state) > population(best->state) + 1e-10) {
                    r.iterations += best->iterations;
                    best = std::move(r);
                    improved = true;
                }
            } catch (const NonConvergence &) {
            }
        }
        if (!improved) break;
    }
    PureState psi = best->state;
    LocalOperation op = best->op;
    NilpotentPoly f = nilpotential(psi, cfg.epsilon_ref);
    double tol = 1e-7 * std::max(1.0, f.max_abs());
    LocalOperation ph = phase_fixing(f, tol);
    psi = apply_local(psi, ph);
    op = op.then(ph);
    // fold the leftover global phase into qubit 1
    cplx g = std::polar(1.0, -std::arg(psi[0]));
    std::vector<Mat2> gm(n, mat2_identity());
    gm[0] = {g, 0.0, 0.0, g};
    LocalOperation gop(std::move(gm), OpKind::unitary);
    psi = apply_local(psi, gop);
    op = op.then(gop);

    SuTanglemeter tm;
    tm.canonic = psi.normalized();
    tm.poly = nilpotential(tm.canonic, cfg.epsilon_ref);
    tm.achieved_population = population(tm.canonic);
    tm.iterations = best->iterations;
    tm.residual = linear_residual(tm.canonic);
    tm.start = best_start;
    return {tm, op};
}

int coset_dimension(int n, Group group) {
    if (group == Group::su) {
        if (n < 3) throw InvalidInput("su coset dimension needs n >= 3");
        return (1 << (n + 1)) - 3 * n - 2;
    }
    if (n < 4) throw InvalidInput("sl coset dimension needs n >= 4");
    return (1 << (n + 1)) - 6 * n - 2;
}

}  // namespace nilq
