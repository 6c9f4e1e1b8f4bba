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

#include "nilq/report.hpp"

#include <json.hpp>

#include "nilq/classification.hpp"
#include "nilq/errors.hpp"
#include "nilq/invariants.hpp"
#include "nilq/io.hpp"
#include "nilq/measures.hpp"
#include "nilq/sl_reduction.hpp"
#include "nilq/su_reduction.hpp"

namespace nilq {

using nlohmann::json;

AnalysisReport analyze(const PureState &input, const FlowConfig &cfg, const std::string &source) {
    AnalysisReport r;
    r.source = source;
    r.n = input.n();
    r.amps = input.amps();
    r.config = cfg;
    const PureState state = input.normalized();

    auto [su, su_op] = reduce_su(state, cfg);
    r.su_converged = true;
    r.su_coeffs = su.poly.coeffs();
    r.su_population = su.achieved_population;
    r.su_iterations = su.iterations;
    r.su_residual = su.residual;

    if (state.n() == 3) {
        InvariantSet3 i3 = invariants3(state);
        r.i123 = std::array<double, 3>{i3.i1, i3.i2, i3.i3};
        r.i45 = i3.i45;
        r.tau = i3.tau;
        return r;
    }
    if (state.n() != 4) {
        r.notes.push_back("reductions beyond su are implemented for n = 3, 4 only");
        return r;
    }

    r.kappa4 = kappa4(su.canonic);
    r.k4 = k4_from_canonic(su.canonic);

    try {
        auto [sl, sl_op] = reduce_sl(su, cfg);
        r.sl_family = to_string(sl.family);
        r.sl_pattern = to_string(sl.pattern);
        r.sl_coeffs = sl.poly.coeffs();
        r.sl_betas = sl.betas;
        r.sl_special_params = sl.special_params;
        r.gammas = sl.spectrum.gammas;
        r.d4 = sl.spectrum.d4;
        r.zero_count = sl.spectrum.zero_count;
        r.sl_iterations = sl.iterations;
        r.sl_cubic_residual = sl.cubic_residual;
        r.sl_linear_residual = sl.linear_residual;
        r.sl_fit_residual = sl.fit_residual;
        r.sl_diagnostic = sl.diagnostic;
        ClassLabel lab = classify(sl, sl.spectrum, cfg.tol_class);
        r.class_tag = to_string(lab.tag);
        r.class_params = lab.params;
        r.class_residual = lab.residual;
        r.class_masks = lab.masks;
        if (sl.family == Family::general) r.s2 = s2(sl);
    } catch (const NonConvergence &e) {
        r.notes.push_back(std::string("sl-reduction: ") + e.what());
    }

    InvariantSet4 inv = invariants4(state, cfg);
    r.i2 = inv.i2;
    r.i4 = inv.i4;
    r.i6 = inv.i6;
    r.q_roots = inv.q_roots;
    r.inv_diagnostic = inv.diagnostic;
    if (inv.valid) {
        r.chosen_q = inv.chosen_q;
        try {
            r.inv_betas = betas_from_invariants(inv, cfg);
            auto [s1v, nu] = s1_and_nonunitarity(state, cfg);
            r.s1 = s1v;
            r.nonunitarity = nu;
        } catch (const DegenerateOrbit &e) {
            r.notes.push_back(std::string("canonic amplitudes: ") + e.what());
        }
    }
    return r;
}

namespace {

json cj(cplx z) {
    return json::array({z.real(), z.imag()});
}

cplx cz(const json &j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

template <class C>
json cvec(const C &v) {
    json a = json::array();
    for (auto z : v) a.push_back(cj(z));
    return a;
}

std::vector<cplx> vec_c(const json &j) {
    std::vector<cplx> v;
    for (const auto &e : j) v.push_back(cz(e));
    return v;
}

template <std::size_t N>
std::array<cplx, N> arr_c(const json &j) {
    std::array<cplx, N> a{};
    if (j.size() != N) throw ParseError("wrong array length in report", 0);
    for (std::size_t k = 0; k < N; k++) a[k] = cz(j[k]);
    return a;
}

template <class T>
json opt(const std::optional<T> &v) {
    return v ? json(*v) : json(nullptr);
}

json optc(const std::optional<cplx> &v) {
    return v ? cj(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json &j, const char *k) {
    if (!j.contains(k) || j.at(k).is_null()) return std::nullopt;
    return j.at(k).get<T>();
}

std::optional<cplx> get_optc(const json &j, const char *k) {
    if (!j.contains(k) || j.at(k).is_null()) return std::nullopt;
    return cz(j.at(k));
}

}  // namespace

std::string report_to_json(const AnalysisReport &r, int indent) {
    json j;
    j["input"] = {{"source", r.source}, {"n", r.n}, {"amps", cvec(r.amps)}};
    j["config"] = json::parse(config_to_json(r.config));
    j["seed"] = opt(r.seed);
    j["su"] = {{"converged", r.su_converged},
               {"coeffs", cvec(r.su_coeffs)},
               {"population", r.su_population},
               {"iterations", r.su_iterations},
               {"residual", r.su_residual}};
    j["sl"] = {{"family", opt(r.sl_family)},
               {"pattern", r.sl_pattern},
               {"coeffs", cvec(r.sl_coeffs)},
               {"betas", cvec(r.sl_betas)},
               {"special_params", cvec(r.sl_special_params)},
               {"gammas", cvec(r.gammas)},
               {"d4", cj(r.d4)},
               {"zero_count", r.zero_count},
               {"iterations", r.sl_iterations},
               {"cubic_residual", r.sl_cubic_residual},
               {"linear_residual", r.sl_linear_residual},
               {"fit_residual", r.sl_fit_residual},
               {"diagnostic", r.sl_diagnostic}};
    json inv;
    inv["i2"] = optc(r.i2);
    inv["i4"] = cvec(r.i4);
    inv["i6"] = cvec(r.i6);
    inv["q_roots"] = cvec(r.q_roots);
    inv["chosen_q"] = optc(r.chosen_q);
    inv["betas"] = r.inv_betas ? cvec(*r.inv_betas) : json(nullptr);
    inv["diagnostic"] = r.inv_diagnostic;
    inv["i123"] = r.i123 ? json(*r.i123) : json(nullptr);
    inv["i45"] = optc(r.i45);
    inv["tau"] = opt(r.tau);
    j["invariants"] = inv;
    j["measures"] = {{"s1", opt(r.s1)},
                     {"nonunitarity", opt(r.nonunitarity)},
                     {"s2", opt(r.s2)},
                     {"kappa4", optc(r.kappa4)},
                     {"k4", opt(r.k4)}};
    j["class"] = {{"tag", opt(r.class_tag)},
                  {"params", cvec(r.class_params)},
                  {"residual", r.class_residual},
                  {"masks", r.class_masks}};
    j["notes"] = r.notes;
    return j.dump(indent);
}

AnalysisReport report_from_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(e.what(), 0);
    }
    AnalysisReport r;
    try {
        const auto &in = j.at("input");
        r.source = in.at("source").get<std::string>();
        r.n = in.at("n").get<int>();
        r.amps = vec_c(in.at("amps"));
        r.config = parse_config_json(j.at("config").dump());
        r.seed = get_opt<uint64_t>(j, "seed");
        const auto &su = j.at("su");
        r.su_converged = su.at("converged").get<bool>();
        r.su_coeffs = vec_c(su.at("coeffs"));
        r.su_population = su.at("population").get<double>();
        r.su_iterations = su.at("iterations").get<int>();
        r.su_residual = su.at("residual").get<double>();
        const auto &sl = j.at("sl");
        r.sl_family = get_opt<std::string>(sl, "family");
        r.sl_pattern = sl.at("pattern").get<std::string>();
        r.sl_coeffs = vec_c(sl.at("coeffs"));
        r.sl_betas = arr_c<3>(sl.at("betas"));
        r.sl_special_params = vec_c(sl.at("special_params"));
        r.gammas = arr_c<4>(sl.at("gammas"));
        r.d4 = cz(sl.at("d4"));
        r.zero_count = sl.at("zero_count").get<int>();
        r.sl_iterations = sl.at("iterations").get<int>();
        r.sl_cubic_residual = sl.at("cubic_residual").get<double>();
        r.sl_linear_residual = sl.at("linear_residual").get<double>();
        r.sl_fit_residual = sl.at("fit_residual").get<double>();
        r.sl_diagnostic = sl.at("diagnostic").get<std::string>();
        const auto &inv = j.at("invariants");
        r.i2 = get_optc(inv, "i2");
        r.i4 = arr_c<3>(inv.at("i4"));
        r.i6 = arr_c<3>(inv.at("i6"));
        r.q_roots = arr_c<3>(inv.at("q_roots"));
        r.chosen_q = get_optc(inv, "chosen_q");
        if (!inv.at("betas").is_null()) r.inv_betas = arr_c<3>(inv.at("betas"));
        r.inv_diagnostic = inv.at("diagnostic").get<std::string>();
        if (!inv.at("i123").is_null()) r.i123 = inv.at("i123").get<std::array<double, 3>>();
        r.i45 = get_optc(inv, "i45");
        r.tau = get_opt<double>(inv, "tau");
        const auto &m = j.at("measures");
        r.s1 = get_opt<double>(m, "s1");
        r.nonunitarity = get_opt<double>(m, "nonunitarity");
        r.s2 = get_opt<double>(m, "s2");
        r.kappa4 = get_optc(m, "kappa4");
        r.k4 = get_opt<double>(m, "k4");
        const auto &c = j.at("class");
        r.class_tag = get_opt<std::string>(c, "tag");
        r.class_params = vec_c(c.at("params"));
        r.class_residual = c.at("residual").get<double>();
        r.class_masks = c.at("masks").get<std::vector<uint32_t>>();
        r.notes = j.at("notes").get<std::vector<std::string>>();
    } catch (const json::exception &e) {
        throw ParseError(std::string("bad report JSON: ") + e.what(), 0);
    }
    return r;
}

}  // namespace nilq
