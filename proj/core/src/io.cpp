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

#include "nilq/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace nilq {

using nlohmann::json;

namespace {

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file '" + path + "'", 0);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int line_of(const std::string &text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

std::string trim(const std::string &s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) a++;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) b--;
    return s.substr(a, b - a);
}

double to_double(const std::string &tok, int line) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception &) {
        throw ParseError("line " + std::to_string(line) + ": not a number: '" + tok + "'", line);
    }
}

}  // namespace

PureState parse_state_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        int line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
    }
    try {
        int n = j.at("n").get<int>();
        const auto &arr = j.at("amps");
        if (!arr.is_array()) throw ParseError("'amps' must be an array", 0);
        std::vector<cplx> a;
        for (const auto &e : arr) {
            if (!e.is_array() || e.size() != 2) throw ParseError("each amplitude must be [re, im]", 0);
            a.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        if (n < 1 || n > kMaxQubits || a.size() != (std::size_t{1} << n)) {
            throw ParseError("expected 2^n amplitudes for n = " + std::to_string(n), 0);
        }
        return PureState(n, std::move(a));
    } catch (const json::exception &e) {
        throw ParseError(std::string("bad state JSON: ") + e.what(), 0);
    }
}

PureState parse_state_csv(const std::string &text) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::vector<std::pair<long, cplx>> rows;
    long maxmask = -1;
    int declared_n = 0;
    while (std::getline(in, raw)) {
        line++;
        std::string s = trim(raw);
        if (!s.empty() && s[0] == '#') {
            // optional "# n=4" directive for sparse files
            auto pos = s.find("n=");
            if (pos != std::string::npos) declared_n = static_cast<int>(to_double(trim(s.substr(pos + 2)), line));
            continue;
        }
        if (s.empty()) continue;
        std::vector<std::string> tok;
        std::stringstream ss(s);
        std::string t;
        while (std::getline(ss, t, ',')) tok.push_back(trim(t));
        if (tok.size() != 3) {
            throw ParseError("line " + std::to_string(line) + ": expected 'mask,re,im'", line);
        }
        // tolerate a header row
        if (rows.empty() && tok[0] == "mask") continue;
        double m = to_double(tok[0], line);
        if (m < 0 || m != std::floor(m) || m >= double(1 << kMaxQubits)) {
            throw ParseError("line " + std::to_string(line) + ": bad mask '" + tok[0] + "'", line);
        }
        long mi = static_cast<long>(m);
        for (auto &r : rows)
            if (r.first == mi) throw ParseError("line " + std::to_string(line) + ": duplicate mask", line);
        rows.emplace_back(mi, cplx(to_double(tok[1], line), to_double(tok[2], line)));
        maxmask = std::max(maxmask, mi);
    }
    if (rows.empty()) throw ParseError("no amplitudes in CSV", line);
    int n = 1;
    while ((1L << n) <= maxmask) n++;
    // sparse files without a directive get the smallest n that fits
    if (declared_n > 0) {
        if ((1L << declared_n) <= maxmask) throw ParseError("mask exceeds declared n", line);
        n = declared_n;
    }
    if (n > kMaxQubits) throw ParseError("too many qubits", line);
    std::vector<cplx> a(std::size_t{1} << n);
    for (auto &[m, v] : rows) a[m] = v;
    try {
        return PureState(n, std::move(a));
    } catch (const InvalidInput &e) {
        throw ParseError(e.what(), line);
    }
}

PureState read_state_file(const std::string &path) {
    std::string text = slurp(path);
    std::string t = trim(text);
    if (!t.empty() && t[0] == '{') return parse_state_json(text);
    return parse_state_csv(text);
}

PureState load_state(const std::string &arg) {
    for (const auto &nm : named_state_names())
        if (arg == nm) return named_state(arg);
    return read_state_file(arg);
}

FlowConfig parse_config_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        int line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
    }
    if (!j.is_object()) throw ParseError("config must be a JSON object", 1);
    FlowConfig c;
    try {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string &k = it.key();
            const auto &v = it.value();
            if (k == "dt0") c.dt0 = v.get<double>();
            else if (k == "dt_max") c.dt_max = v.get<double>();
            else if (k == "tol_linear") c.tol_linear = v.get<double>();
            else if (k == "tol_phase") c.tol_phase = v.get<double>();
            else if (k == "max_iters") c.max_iters = v.get<int>();
            else if (k == "polish_iters") c.polish_iters = v.get<int>();
            else if (k == "tol_polish") c.tol_polish = v.get<double>();
            else if (k == "su_starts") c.su_starts = v.get<int>();
            else if (k == "tol_cubic") c.tol_cubic = v.get<double>();
            else if (k == "tol_det") c.tol_det = v.get<double>();
            else if (k == "tol_gamma") c.tol_gamma = v.get<double>();
            else if (k == "tol_class") c.tol_class = v.get<double>();
            else if (k == "tol_radicand") c.tol_radicand = v.get<double>();
            else if (k == "epsilon_ref") c.epsilon_ref = v.get<double>();
            else if (k == "tol_criterion") c.tol_criterion = v.get<double>();
            else throw ParseError("unknown config key '" + k + "'", 0);
        }
    } catch (const json::exception &e) {
        throw ParseError(std::string("bad config value: ") + e.what(), 0);
    }
    if (c.dt0 <= 0 || c.dt_max < c.dt0 || c.max_iters <= 0) throw ParseError("invalid flow parameters", 0);
    return c;
}

FlowConfig read_config_file(const std::string &path) {
    return parse_config_json(slurp(path));
}

std::string config_to_json(const FlowConfig &c) {
    json j = {{"dt0", c.dt0},
              {"dt_max", c.dt_max},
              {"tol_linear", c.tol_linear},
              {"tol_phase", c.tol_phase},
              {"max_iters", c.max_iters},
              {"polish_iters", c.polish_iters},
              {"tol_polish", c.tol_polish},
              {"su_starts", c.su_starts},
              {"tol_cubic", c.tol_cubic},
              {"tol_det", c.tol_det},
              {"tol_gamma", c.tol_gamma},
              {"tol_class", c.tol_class},
              {"tol_radicand", c.tol_radicand},
              {"epsilon_ref", c.epsilon_ref},
              {"tol_criterion", c.tol_criterion}};
    return j.dump();
}

std::string state_to_json(const PureState &s) {
    json a = json::array();
    for (auto v : s.amps()) a.push_back({v.real(), v.imag()});
    return json{{"n", s.n()}, {"amps", a}}.dump();
}

}  // namespace nilq
