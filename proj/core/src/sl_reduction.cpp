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

#include "nilq/sl_reduction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "nilq/classification.hpp"
#include "nilq/errors.hpp"

namespace nilq {

namespace {

constexpr std::array<uint32_t, 4> kCubic = {14, 13, 11, 7};
constexpr std::array<std::pair<uint32_t, uint32_t>, 3> kPairs = {{{3, 12}, {5, 10}, {6, 9}}};

double cubic_max(const NilpotentPoly &f) {
    double r = 0;
    for (uint32_t m : kCubic) r = std::max(r, std::abs(f[m]));
    return r;
}

double linear_max(const NilpotentPoly &f) {
    double r = 0;
    for (int q = 0; q < f.n(); q++) r = std::max(r, std::abs(f[1u << q]));
    return r;
}

// size of the entangling part
double body_max(const NilpotentPoly &f) {
    double r = 0;
    for (uint32_t m = 0; m < f.size(); m++)
        if (std::popcount(m) >= 2) r = std::max(r, std::abs(f[m]));
    return r;
}

Eigen::Matrix4cd to_eigen(const Mat4c &m) {
    Eigen::Matrix4cd e;
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++) e(i, j) = m[i][j];
    return e;
}

double max_entry(const Mat4c &m) {
    double r = 0;
    for (auto &row : m)
        for (auto v : row) r = std::max(r, std::abs(v));
    return r;
}

bool det_small(const Mat4c &m, double tol_det) {
    double s = max_entry(m);
    if (s == 0) return true;
    return std::abs(det4(m)) <= tol_det * s * s * s * s;
}

LocalOperation scaling_op(const Eigen::Vector4cd &l) {
    // e^{B sigma_z} with sigma_z = diag(-1, 1) multiplies psi_m / psi_0 by prod e^{2 B_i}
    std::vector<Mat2> mats;
    for (int q = 0; q < 4; q++) {
        cplx B = l(q) / 2.0;
        mats.push_back({std::exp(-B), 0.0, 0.0, std::exp(B)});
    }
    return LocalOperation(std::move(mats), OpKind::scaling);
}

NilpotentPoly rescale(const NilpotentPoly &f, const Eigen::Vector4cd &l) {
    NilpotentPoly g = f;
    for (uint32_t m = 0; m < 16; m++) {
        cplx e = 0;
        for (int q = 0; q < 4; q++)
            if ((m >> q) & 1) e += l(q);
        g[m] = f[m] * std::exp(e);
    }
    return g;
}

Eigen::Vector4cd solve_logs(const std::vector<Eigen::Vector4d> &rows, const std::vector<cplx> &rhs) {
    if (rows.empty()) return Eigen::Vector4cd::Zero();
    Eigen::MatrixXcd A(rows.size(), 4);
    Eigen::VectorXcd b(rows.size());
    for (std::size_t k = 0; k < rows.size(); k++) {
        for (int q = 0; q < 4; q++) A(k, q) = rows[k](q);
        b(k) = rhs[k];
    }
    return A.completeOrthogonalDecomposition().solve(b);
}

Eigen::Vector4d bits(uint32_t m) {
    Eigen::Vector4d v;
    for (int q = 0; q < 4; q++) v(q) = (m >> q) & 1;
    return v;
}

bool principal(cplx z) {
    return z.real() > 0 || (z.real() == 0 && z.imag() >= 0);
}

// Point-like forms: set every surviving coefficient to 1 as far as scalings allow.
ScalingResult unit_scaling(const NilpotentPoly &f, double tol_zero) {
    std::vector<Eigen::Vector4d> rows;
    std::vector<cplx> rhs;
    for (uint32_t m = 0; m < 16; m++) {
        if (std::popcount(m) < 2 || std::abs(f[m]) <= tol_zero) continue;
        rows.push_back(bits(m));
        rhs.push_back(-std::log(f[m]));
    }
    Eigen::Vector4cd l = solve_logs(rows, rhs);
    ScalingResult r;
    r.poly = rescale(f, l);
    r.op = scaling_op(l);
    r.pattern = ScalingPattern::irregular;
    r.residual = 0;
    for (uint32_t m = 0; m < 16; m++)
        if (std::popcount(m) >= 2 && std::abs(f[m]) > tol_zero)
            r.residual = std::max(r.residual, std::abs(r.poly[m] - 1.0));
    return r;
}

SlTanglemeter finish(const PureState &psi, const NilpotentPoly &f, Family fam, const SingularSpectrum &sp,
                     int iters, const std::string &diag) {
    SlTanglemeter tm;
    tm.poly = f;
    tm.family = fam;
    tm.spectrum = sp;
    tm.iterations = iters;
    tm.cubic_residual = cubic_max(f);
    tm.linear_residual = linear_max(f);
    tm.diagnostic = diag;
    tm.state = psi.normalized();
    return tm;
}

PureState state_from_poly(const NilpotentPoly &f) {
    NilpotentPoly F = exp(f);
    return PureState(f.n(), F.coeffs()).normalized();
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::general:
            return "general";
        case Family::special_s1:
            return "special_s1";
        case Family::special_s2:
            return "special_s2";
        case Family::special_s3:
            return "special_s3";
        case Family::special_s4:
            return "special_s4";
        case Family::degenerate:
            return "degenerate";
    }
    return "degenerate";
}

Family family_from_string(const std::string &s) {
    for (Family f : {Family::general, Family::special_s1, Family::special_s2, Family::special_s3,
                     Family::special_s4, Family::degenerate})
        if (to_string(f) == s) return f;
    throw InvalidInput("unknown family '" + s + "'");
}

std::string to_string(ScalingPattern p) {
    switch (p) {
        case ScalingPattern::eq12:
            return "eq12";
        case ScalingPattern::eq16a:
            return "eq16a";
        case ScalingPattern::eq17:
            return "eq17";
        case ScalingPattern::eq18:
            return "eq18";
        case ScalingPattern::irregular:
            return "irregular";
    }
    return "irregular";
}

ScalingPattern scaling_pattern_from_string(const std::string &s) {
    for (ScalingPattern p : {ScalingPattern::eq12, ScalingPattern::eq16a, ScalingPattern::eq17,
                             ScalingPattern::eq18, ScalingPattern::irregular})
        if (to_string(p) == s) return p;
    throw InvalidInput("unknown scaling pattern '" + s + "'");
}

Mat4c d4_matrix(const NilpotentPoly &b) {
    if (b.n() != 4) throw InvalidInput("d4_matrix requires n = 4");
    const cplx d = -b[15];
    Mat4c m = {{
        {d, 2.0 * b[6] * b[10], 2.0 * b[6] * b[12], 2.0 * b[10] * b[12]},
        {2.0 * b[5] * b[9], d, 2.0 * b[5] * b[12], 2.0 * b[9] * b[12]},
        {2.0 * b[3] * b[9], 2.0 * b[3] * b[10], d, 2.0 * b[9] * b[10]},
        {2.0 * b[3] * b[5], 2.0 * b[3] * b[6], 2.0 * b[5] * b[6], d},
    }};
    return m;
}

Mat4c d4_matrix(const SuTanglemeter &fc) {
    return d4_matrix(fc.poly);
}

cplx det4(const Mat4c &m) {
    return to_eigen(m).partialPivLu().determinant();
}

SingularSpectrum gammas(const NilpotentPoly &f, const FlowConfig &cfg) {
    const Mat4c m = d4_matrix(f);
    SingularSpectrum sp;
    sp.d4 = det4(m);
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(to_eigen(m), false);
    const double scale = std::max(1.0, max_entry(m));
    for (int k = 0; k < 4; k++) {
        sp.gammas[k] = es.eigenvalues()(k);
        if (std::abs(sp.gammas[k]) < cfg.tol_gamma * scale) sp.zero_count++;
    }
    // closed-form cross-check: numeric eigenvalues are minus the printed gammas
    const cplx r1 = std::sqrt(f[5] * f[6] * f[9] * f[10]);
    const cplx r2 = std::sqrt(f[3] * f[6] * f[9] * f[12]);
    const cplx r3 = std::sqrt(f[3] * f[5] * f[10] * f[12]);
    const double tol = 1e-8 * std::max(1.0, max_entry(m));
    for (int br = 0; br < 8 && !sp.closed_form_ok; br++) {
        cplx a = (br & 1) ? -r1 : r1, b = (br & 2) ? -r2 : r2, c = (br & 4) ? -r3 : r3;
        std::array<cplx, 4> g = {f[15] - 2.0 * a + 2.0 * b - 2.0 * c, f[15] + 2.0 * a - 2.0 * b - 2.0 * c,
                                 f[15] - 2.0 * a - 2.0 * b + 2.0 * c, f[15] + 2.0 * a + 2.0 * b + 2.0 * c};
        std::array<bool, 4> used{};
        bool ok = true;
        for (int k = 0; k < 4 && ok; k++) {
            ok = false;
            for (int j = 0; j < 4; j++) {
                if (!used[j] && std::abs(-g[j] - sp.gammas[k]) < tol) {
                    used[j] = true;
                    ok = true;
                    break;
                }
            }
        }
        sp.closed_form_ok = ok;
    }
    return sp;
}

SingularSpectrum gammas(const SuTanglemeter &fc, const FlowConfig &cfg) {
    return gammas(fc.poly, cfg);
}

std::array<cplx, 4> feedback_p_minus(const NilpotentPoly &f, const std::array<cplx, 4> &p_plus) {
    if (f.n() != 4) throw InvalidInput("feedback_p_minus requires n = 4");
    std::array<cplx, 4> pm{};
    for (int j = 0; j < 4; j++)
        for (int i = 0; i < 4; i++)
            if (i != j) pm[j] -= p_plus[i] * f[(1u << i) | (1u << j)];
    return pm;
}

ScalingResult apply_scaling(const NilpotentPoly &f, double tol_zero, double tol_form) {
    if (f.n() != 4) throw InvalidInput("apply_scaling requires n = 4");
    const double tz = tol_zero * std::max(1.0, body_max(f));
    auto zero = [&](uint32_t m) { return std::abs(f[m]) <= tz; };
    // 0 = both zero, 1 = both nonzero, 2 = only the first zero, 3 = only the second zero
    std::array<int, 3> kind{};
    for (int k = 0; k < 3; k++) {
        auto [a, b] = kPairs[k];
        kind[k] = zero(a) && zero(b) ? 0 : !zero(a) && !zero(b) ? 1 : zero(a) ? 2 : 3;
    }
    cplx denom = f[15];
    for (int k = 0; k < 3; k++)
        if (kind[k] == 1) denom += f[kPairs[k].first] * f[kPairs[k].second];
    const double tf = std::max(tol_form * std::max(1.0, body_max(f)), tz);
    const bool eq15_form = linear_max(f) <= tf && cubic_max(f) <= tf;
    const bool denom_ok = std::abs(denom) > tz;
    ScalingPattern pat = ScalingPattern::irregular;
    if (eq15_form && denom_ok) {
        auto plain = [&](int k) { return kind[k] == 0 || kind[k] == 1; };
        if (plain(0) && plain(1) && plain(2))
            pat = ScalingPattern::eq12;
        else if (kind[0] == 2 && plain(1) && plain(2))
            pat = ScalingPattern::eq16a;
        else if (kind[0] == 2 && kind[1] == 3 && plain(2))
            pat = ScalingPattern::eq17;
        else if (kind[0] == 2 && kind[1] == 3 && kind[2] == 3)
            pat = ScalingPattern::eq18;
    }
    if (pat == ScalingPattern::irregular) return unit_scaling(f, tol_zero);

    std::vector<Eigen::Vector4d> rows;
    std::vector<cplx> rhs;
    for (int k = 0; k < 3; k++) {
        auto [a, b] = kPairs[k];
        if (kind[k] == 1) {
            rows.push_back(bits(a) - bits(b));
            rhs.push_back(std::log(f[b] / f[a]));
        } else if (kind[k] == 2) {
            rows.push_back(bits(b));
            rhs.push_back(-std::log(f[b]));
        } else if (kind[k] == 3) {
            rows.push_back(bits(a));
            rhs.push_back(-std::log(f[a]));
        }
    }
    rows.push_back(Eigen::Vector4d::Ones());
    rhs.push_back(-std::log(denom));
    Eigen::Vector4cd l = solve_logs(rows, rhs);
    NilpotentPoly g = rescale(f, l);
    if (pat == ScalingPattern::eq12) {
        // flip pairs of scalings so beta3 and beta5 sit on the principal branch
        const cplx ipi(0, std::numbers::pi);
        if (kind[0] == 1 && !principal(g[3])) {
            l(0) += ipi, l(2) += ipi;
            g = rescale(f, l);
        }
        if (kind[1] == 1 && !principal(g[5])) {
            l(0) += ipi, l(1) += ipi;
            g = rescale(f, l);
        }
    }
    ScalingResult r;
    r.poly = g;
    r.op = scaling_op(l);
    r.pattern = pat;
    // residual against the target form
    double res = 0;
    for (int k = 0; k < 3; k++) {
        auto [a, b] = kPairs[k];
        if (kind[k] == 1) res = std::max(res, std::abs(g[a] - g[b]));
        if (kind[k] == 2) res = std::max(res, std::abs(g[b] - 1.0));
        if (kind[k] == 3) res = std::max(res, std::abs(g[a] - 1.0));
    }
    cplx q15 = 1.0;
    for (int k = 0; k < 3; k++)
        if (kind[k] == 1) q15 -= g[kPairs[k].first] * g[kPairs[k].second];
    res = std::max(res, std::abs(g[15] - q15));
    r.residual = res;
    return r;
}

SuTanglemeter as_tanglemeter(const PureState &state, const FlowConfig &cfg) {
    SuTanglemeter tm;
    PureState s = state.normalized();
    cplx g = std::polar(1.0, -std::arg(s[0]));
    std::vector<cplx> a = s.amps();
    for (auto &v : a) v *= g;
    tm.canonic = PureState(s.n(), std::move(a));
    tm.poly = nilpotential(tm.canonic, cfg.epsilon_ref);
    tm.achieved_population = std::norm(tm.canonic[0]);
    tm.residual = linear_max(tm.poly);
    return tm;
}

namespace {

// Joint feedback: pick all eight P so linear and cubic terms both decay at unit
// rate to first order. Used when the printed feedback (which assumes vanishing
// linear terms) cannot make progress.
bool joint_feedback(const NilpotentPoly &f, std::array<cplx, 4> *pp, std::array<cplx, 4> *pm) {
    constexpr std::array<uint32_t, 8> rows = {1, 2, 4, 8, 14, 13, 11, 7};
    const NilpotentPoly F = exp(f);
    const NilpotentPoly Finv = exp(-f);
    const cplx mi(0, -1);
    Eigen::Matrix<cplx, 8, 8> J;
    for (int q = 1; q <= 4; q++) {
        // P+ lowers qubit q and shifts the reference amplitude
        NilpotentPoly dp = (partial(F, q) - F * F[1u << (q - 1)]) * mi;
        NilpotentPoly dm = apply_generator(F, q, Generator::plus) * mi;
        NilpotentPoly fp = multiply(Finv, dp), fm = multiply(Finv, dm);
        for (int r = 0; r < 8; r++) {
            J(r, q - 1) = fp[rows[r]];
            J(r, q + 3) = fm[rows[r]];
        }
    }
    Eigen::Matrix<cplx, 8, 1> rhs;
    for (int r = 0; r < 8; r++) rhs(r) = -f[rows[r]];
    Eigen::FullPivLU<Eigen::Matrix<cplx, 8, 8>> lu(J);
    if (lu.rank() < 8) return false;
    Eigen::Matrix<cplx, 8, 1> x = lu.solve(rhs);
    for (int q = 0; q < 4; q++) (*pp)[q] = x(q), (*pm)[q] = x(q + 4);
    return true;
}

// Fallback for orbits the flow cannot close: look for an eigenframe of the
// state in which the nilpotential is already free of linear and cubic terms.
bool probe_eigenframes(const PureState &psi, const FlowConfig &cfg, PureState *out, LocalOperation *op,
                       uint32_t *which) {
    for (uint32_t c = 0; c < 16; c++) {
        LocalOperation rot = eigenframe_rotation(psi, c);
        PureState s = apply_local(psi, rot);
        if (std::norm(s[0]) < 1e-6 * s.norm2()) continue;
        NilpotentPoly f = nilpotential(s, cfg.epsilon_ref);
        const double tol = 1e-7 * std::max(1.0, body_max(f));
        if (linear_max(f) <= tol && cubic_max(f) <= tol && body_max(f) > tol) {
            *out = s;
            *op = rot;
            *which = c;
            return true;
        }
    }
    return false;
}

}  // namespace

std::pair<SlTanglemeter, LocalOperation> reduce_sl(const SuTanglemeter &fc, const FlowConfig &cfg) {
    if (fc.poly.n() != 4) throw InvalidInput("reduce_sl requires n = 4");
    PureState psi = fc.canonic.normalized();
    NilpotentPoly f = nilpotential(psi, cfg.epsilon_ref);
    LocalOperation op = LocalOperation::identity(4, OpKind::invertible);
    const SingularSpectrum sp0 = gammas(f, cfg);
    const bool singular_start = det_small(d4_matrix(f), cfg.tol_det);
    const double body0 = body_max(f);

    double dt = cfg.dt0;
    int it = 0;
    bool collapsed = false;
    bool joint = false;
    std::string why;
    auto joint_res = [](const NilpotentPoly &g) { return std::max(cubic_max(g), linear_max(g)); };
    while (cubic_max(f) >= cfg.tol_cubic || (joint && linear_max(f) >= cfg.tol_cubic)) {
        if (++it > cfg.max_iters) throw NonConvergence("sl-flow did not converge", cubic_max(f), it - 1);
        const Mat4c M = d4_matrix(f);
        if (!singular_start && det_small(M, cfg.tol_det)) {
            collapsed = true;
            why = "determinant collapsed during the flow";
            break;
        }
        Eigen::Vector4cd rhs;
        for (int k = 0; k < 4; k++) rhs(k) = cplx(0, 1) * f[kCubic[k]];
        Eigen::Vector4cd pp = singular_start ? Eigen::Vector4cd(to_eigen(M).completeOrthogonalDecomposition().solve(rhs))
                                             : Eigen::Vector4cd(to_eigen(M).partialPivLu().solve(rhs));
        std::array<cplx, 4> p_plus{pp(0), pp(1), pp(2), pp(3)};
        std::array<cplx, 4> p_minus = feedback_p_minus(f, p_plus);
        // damp any linear drift
        for (int j = 0; j < 4; j++) p_minus[j] -= cplx(0, 1) * f[1u << j];
        if (joint && !joint_feedback(f, &p_plus, &p_minus)) {
            why = "joint feedback system singular";
            break;
        }
        const double r = joint ? joint_res(f) : cubic_max(f);
        bool accepted = false;
        while (dt > 1e-12) {
            std::vector<Mat2> mats;
            for (int q = 0; q < 4; q++) mats.push_back(generator_step(p_plus[q], p_minus[q], dt));
            LocalOperation step(std::move(mats), OpKind::invertible);
            PureState next = apply_local(psi, step);
            if (std::norm(next[0]) > 1e-24 * next.norm2()) {
                next = next.normalized();
                NilpotentPoly g = nilpotential(next, cfg.epsilon_ref);
                if ((joint ? joint_res(g) : cubic_max(g)) < r) {
                    psi = next;
                    f = g;
                    op = op.then(step);
                    accepted = true;
                    dt = std::min(dt * 1.5, cfg.dt_max);
                    break;
                }
            }
            dt *= 0.5;
        }
        if (!accepted) {
            if (!joint && !singular_start) {
                joint = true;
                dt = cfg.dt0;
                continue;
            }
            why = "step size underflow";
            break;
        }
        if (body_max(f) < 1e-4 * body0) {
            collapsed = true;
            why = "nilpotential collapsed toward the vacuum (orbit not closed)";
            break;
        }
    }

    const bool reached = cubic_max(f) < cfg.tol_cubic;
    constexpr double kLinearOk = 1e-8;
    const bool linear_ok = linear_max(f) < kLinearOk;

    if (!singular_start && reached && linear_ok && !collapsed) {
        ScalingResult sc = apply_scaling(f, 1e-9, kLinearOk);
        PureState fin = state_from_poly(sc.poly);
        Family fam = sc.pattern == ScalingPattern::eq12 ? Family::general : Family::degenerate;
        SlTanglemeter tm = finish(fin, sc.poly, fam, sp0, it, "");
        tm.pattern = sc.pattern;
        tm.fit_residual = sc.residual;
        if (fam == Family::general) tm.betas = {sc.poly[3], sc.poly[5], sc.poly[6]};
        return {tm, op.then(sc.op)};
    }

    if (singular_start && reached && linear_ok) {
        // nothing left to remove; the special templates all carry cubic terms,
        // so this is one of the degenerate forms
        ScalingResult sc = apply_scaling(f, 1e-9, kLinearOk);
        SlTanglemeter tm = finish(state_from_poly(sc.poly), sc.poly, Family::degenerate, sp0, it,
                                  "singular spectrum at start; cubic terms already absent");
        tm.pattern = sc.pattern;
        tm.fit_residual = sc.residual;
        return {tm, op.then(sc.op)};
    }

    if (singular_start) {
        static constexpr std::array<Family, 4> fams = {Family::special_s1, Family::special_s2, Family::special_s3,
                                                       Family::special_s4};
        static constexpr std::array<ClassTag, 4> tags = {ClassTag::G_b, ClassTag::G_c, ClassTag::G_d,
                                                         ClassTag::G_e};
        const int idx = std::clamp(sp0.zero_count, 1, 4) - 1;
        // scale so the template's pinned coefficients match where possible
        std::vector<Eigen::Vector4d> rows;
        std::vector<cplx> rhs;
        for (auto [m, v] : template_fixed_slots(tags[idx])) {
            if (std::abs(f[m]) <= 1e-12) continue;
            rows.push_back(bits(m));
            rhs.push_back(std::log(v / f[m]));
        }
        Eigen::Vector4cd l = solve_logs(rows, rhs);
        NilpotentPoly g = rescale(f, l);
        TemplateFit fit = fit_template(tags[idx], g);
        SlTanglemeter tm = finish(state_from_poly(g), g, fams[idx], sp0, it,
                                  reached ? "" : "cubic terms not removable at singular start");
        tm.special_params = fit.params;
        tm.fit_residual = fit.residual;
        return {tm, op.then(scaling_op(l))};
    }

    // degenerate: the generic flow left the orbit or stalled
    PureState probe;
    LocalOperation rot;
    uint32_t which = 0;
    if (probe_eigenframes(fc.canonic, cfg, &probe, &rot, &which)) {
        NilpotentPoly g = nilpotential(probe, cfg.epsilon_ref);
        ScalingResult sc = apply_scaling(g);
        SlTanglemeter tm = finish(state_from_poly(sc.poly), sc.poly, Family::degenerate, sp0, it,
                                  why + "; stationary form found in eigenframe " + std::to_string(which));
        tm.pattern = sc.pattern;
        tm.fit_residual = sc.residual;
        LocalOperation full = rot.then(sc.op);
        return {tm, LocalOperation(full.mats(), OpKind::invertible)};
    }
    SlTanglemeter tm = finish(psi, f, Family::degenerate, sp0, it, why.empty() ? "linear terms drifted" : why);
    tm.fit_residual = std::max(cubic_max(f), linear_max(f));
    return {tm, op};
}

}  // namespace nilq
