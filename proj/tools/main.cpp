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

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "nilq/classification.hpp"
#include "nilq/errors.hpp"
#include "nilq/invariants.hpp"
#include "nilq/io.hpp"
#include "nilq/report.hpp"
#include "nilq/sampler.hpp"
#include "nilq/sl_reduction.hpp"
#include "nilq/su_reduction.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitNonConvergence = 3;

void emit(const std::string &text, const std::string &out) {
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw nilq::InvalidInput("cannot write '" + out + "'");
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

nlohmann::json cj(nilq::cplx z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"nilq: entanglement analysis of 3- and 4-qubit pure states"};
    app.require_subcommand(1);

    std::string config_path, out_path, state_arg;
    uint64_t seed = 1;
    int n = 4;
    std::size_t count = 10000, bins = 50;
    unsigned threads = 0;

    auto *analyze = app.add_subcommand("analyze", "full analysis report (JSON)");
    analyze->add_option("state", state_arg, "state file (JSON/CSV) or named state")->required();
    analyze->add_option("--config", config_path, "flow/tolerance config JSON");
    analyze->add_option("--out", out_path, "write report here instead of stdout");

    auto *sample = app.add_subcommand("sample", "per-state measures of Haar-random states (CSV)");
    sample->add_option("--n", n, "qubit count (3 or 4)")->check(CLI::IsMember({3, 4}));
    sample->add_option("--count", count, "number of states")->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "base seed; state i uses seed + i");
    sample->add_option("--out", out_path, "CSV output path");
    sample->add_option("--threads", threads, "worker threads (0 = all cores)");
    sample->add_option("--config", config_path, "flow/tolerance config JSON");

    auto *hist = app.add_subcommand("histogram", "K4 histogram over Haar-random 4-qubit states (CSV)");
    hist->add_option("--count", count, "number of states")->check(CLI::PositiveNumber);
    hist->add_option("--bins", bins, "number of bins on [0, 1]")->check(CLI::PositiveNumber);
    hist->add_option("--seed", seed, "base seed; state i uses seed + i");
    hist->add_option("--out", out_path, "CSV output path");
    hist->add_option("--threads", threads, "worker threads (0 = all cores)");
    hist->add_option("--config", config_path, "flow/tolerance config JSON");

    auto *invc = app.add_subcommand("invariants", "polynomial invariants (JSON)");
    invc->add_option("state", state_arg, "state file or named state")->required();
    invc->add_option("--config", config_path, "flow/tolerance config JSON");
    invc->add_option("--out", out_path, "output path");

    auto *cls = app.add_subcommand("classify", "sl-tanglemeter family and class label (JSON)");
    cls->add_option("state", state_arg, "state file or named state")->required();
    cls->add_option("--config", config_path, "flow/tolerance config JSON");
    cls->add_option("--out", out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    try {
        nilq::FlowConfig cfg;
        if (!config_path.empty()) cfg = nilq::read_config_file(config_path);

        if (*analyze) {
            nilq::PureState s = nilq::load_state(state_arg);
            nilq::AnalysisReport r = nilq::analyze(s, cfg, state_arg);
            emit(nilq::report_to_json(r), out_path);
        } else if (*sample) {
            auto rows = nilq::sample_measures(n, count, seed, cfg, threads);
            std::string csv = "# seed=" + std::to_string(seed) + "\n" + nilq::samples_csv(rows);
            emit(csv, out_path);
            std::size_t bad = 0;
            for (auto &r : rows) bad += r.converged ? 0 : 1;
            std::fprintf(stderr, "samples=%zu nonconvergent=%zu seed=%llu\n", rows.size(), bad,
                         static_cast<unsigned long long>(seed));
        } else if (*hist) {
            nilq::Histogram h = nilq::k4_histogram(count, bins, seed, cfg, threads);
            std::string csv = nilq::histogram_csv(h);
            emit(csv, out_path);
            // summary line also on stderr when writing to a file
            if (!out_path.empty()) std::fprintf(stderr, "%s", csv.substr(csv.rfind('#')).c_str());
        } else if (*invc) {
            nilq::PureState s = nilq::load_state(state_arg).normalized();
            nlohmann::json j;
            j["n"] = s.n();
            if (s.n() == 3) {
                auto i = nilq::invariants3(s);
                j["i1"] = i.i1, j["i2"] = i.i2, j["i3"] = i.i3, j["i45"] = cj(i.i45), j["tau"] = i.tau;
            } else if (s.n() == 4) {
                auto i = nilq::invariants4(s, cfg);
                j["i2"] = cj(i.i2);
                for (int k = 0; k < 3; k++) {
                    j["i4"].push_back(cj(i.i4[k]));
                    j["i6"].push_back(cj(i.i6[k]));
                    j["q_roots"].push_back(cj(i.q_roots[k]));
                }
                j["valid"] = i.valid;
                if (i.valid) {
                    j["chosen_q"] = cj(i.chosen_q);
                    try {
                        for (auto b : nilq::betas_from_invariants(i, cfg)) j["betas"].push_back(cj(b));
                    } catch (const nilq::DegenerateOrbit &e) {
                        j["diagnostic"] = e.what();
                    }
                } else {
                    j["diagnostic"] = i.diagnostic;
                }
            } else {
                throw nilq::InvalidInput("invariants need n = 3 or 4");
            }
            emit(j.dump(2), out_path);
        } else if (*cls) {
            nilq::PureState s = nilq::load_state(state_arg);
            if (s.n() != 4) throw nilq::InvalidInput("classification needs n = 4");
            auto [su, op] = nilq::reduce_su(s, cfg);
            auto [sl, op2] = nilq::reduce_sl(su, cfg);
            auto lab = nilq::classify(sl, sl.spectrum, cfg.tol_class);
            nlohmann::json j;
            j["family"] = nilq::to_string(sl.family);
            j["pattern"] = nilq::to_string(sl.pattern);
            j["class"] = nilq::to_string(lab.tag);
            for (auto p : lab.params) j["params"].push_back(cj(p));
            j["residual"] = lab.residual;
            j["masks"] = lab.masks;
            j["zero_count"] = sl.spectrum.zero_count;
            j["diagnostic"] = sl.diagnostic;
            emit(j.dump(2), out_path);
        }
    } catch (const nilq::NonConvergence &e) {
        std::fprintf(stderr, "error: %s (residual %.3e after %d iterations)\n", e.what(), e.residual(),
                     e.iterations());
        return kExitNonConvergence;
    } catch (const nilq::InvalidInput &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
