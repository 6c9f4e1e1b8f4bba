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

#include "nilq/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>

#include "nilq/classification.hpp"
#include "nilq/errors.hpp"
#include "nilq/measures.hpp"
#include "nilq/sl_reduction.hpp"
#include "nilq/su_reduction.hpp"

namespace nilq {

double Rng::uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (spare_) {
        double v = *spare_;
        spare_.reset();
        return v;
    }
    double u1;
    do {
        u1 = uniform();
    } while (u1 <= 0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    return r * std::cos(t);
}

PureState haar_sample(int n, uint64_t seed) {
    if (n != 3 && n != 4) throw InvalidInput("haar_sample supports n = 3 or 4");
    Rng rng(seed);
    std::vector<cplx> a(std::size_t{1} << n);
    for (auto &v : a) {
        double re = rng.normal();
        double im = rng.normal();
        v = cplx(re, im);
    }
    return PureState(n, std::move(a)).normalized();
}

namespace {

SampleRow measure_one(int n, std::size_t index, uint64_t seed, const FlowConfig &cfg, bool k4_only) {
    SampleRow row;
    row.index = index;
    row.seed = seed;
    PureState s = haar_sample(n, seed);
    try {
        auto [su, op] = reduce_su(s, cfg);
        row.converged = true;
        if (n != 4) return row;
        row.k4 = k4_from_canonic(su.canonic);
        if (k4_only) return row;
        try {
            auto [sl, op2] = reduce_sl(su, cfg);
            row.family = to_string(sl.family);
            row.class_tag = to_string(classify(sl, sl.spectrum, cfg.tol_class).tag);
            if (sl.family == Family::general) row.s2 = s2(sl);
        } catch (const NonConvergence &e) {
            row.error = std::string("sl: ") + e.what();
        }
        try {
            auto [s1v, nu] = s1_and_nonunitarity(s, cfg);
            row.s1 = s1v;
            row.nonunitarity = nu;
        } catch (const DegenerateOrbit &e) {
            if (row.error.empty()) row.error = std::string("s1: ") + e.what();
        }
    } catch (const NonConvergence &e) {
        row.converged = false;
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<SampleRow> sample_measures(int n, std::size_t count, uint64_t seed, const FlowConfig &cfg,
                                       unsigned threads, bool k4_only) {
    std::vector<SampleRow> rows(count);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t i = next++; i < count; i = next++) rows[i] = measure_one(n, i, seed + i, cfg, k4_only);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; t++) pool.emplace_back(work);
    work();
    for (auto &t : pool) t.join();
    return rows;
}

Histogram k4_histogram(std::size_t count, std::size_t bins, uint64_t seed, const FlowConfig &cfg, unsigned threads) {
    if (bins == 0) throw InvalidInput("bin count must be positive");
    auto rows = sample_measures(4, count, seed, cfg, threads, true);
    Histogram h;
    h.seed = seed;
    h.sample_count = count;
    h.counts.assign(bins, 0);
    for (std::size_t b = 0; b < bins; b++) {
        h.low.push_back(double(b) / bins);
        h.high.push_back(double(b + 1) / bins);
    }
    double sum = 0;
    std::size_t used = 0;
    for (const auto &r : rows) {
        if (!r.converged) {
            h.nonconvergent++;
            continue;
        }
        if (r.k4 < 0 || r.k4 > 1 + 1e-6) {
            h.out_of_range++;
            continue;
        }
        std::size_t b = std::min(bins - 1, static_cast<std::size_t>(r.k4 * bins));
        h.counts[b]++;
        sum += r.k4;
        used++;
    }
    h.mean = used ? sum / used : 0;
    h.mode_bin = static_cast<std::size_t>(std::max_element(h.counts.begin(), h.counts.end()) - h.counts.begin());
    return h;
}

std::string histogram_csv(const Histogram &h) {
    std::ostringstream os;
    os << "bin_low,bin_high,count\n";
    char buf[128];
    for (std::size_t b = 0; b < h.counts.size(); b++) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%zu\n", h.low[b], h.high[b], h.counts[b]);
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "# seed=%llu samples=%zu nonconvergent=%zu out_of_range=%zu ",
                  static_cast<unsigned long long>(h.seed), h.sample_count, h.nonconvergent, h.out_of_range);
    os << buf;
    std::snprintf(buf, sizeof buf, "mode_bin=[%.6f,%.6f) mean=%.6f\n", h.low[h.mode_bin], h.high[h.mode_bin], h.mean);
    os << buf;
    return os.str();
}

std::string samples_csv(const std::vector<SampleRow> &rows) {
    std::ostringstream os;
    os << "index,seed,converged,k4,s1,nonunitarity,s2,family,class,error\n";
    char buf[64];
    auto num = [&](std::optional<double> v) {
        if (!v) return std::string();
        std::snprintf(buf, sizeof buf, "%.17g", *v);
        return std::string(buf);
    };
    for (const auto &r : rows) {
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        os << r.index << ',' << r.seed << ',' << (r.converged ? 1 : 0) << ',' << num(r.k4) << ',' << num(r.s1)
           << ',' << num(r.nonunitarity) << ',' << num(r.s2) << ',' << r.family << ',' << r.class_tag << ','
           << err << '\n';
    }
    return os.str();
}

int interior_peaks(const std::vector<std::size_t> &c, std::size_t window) {
    // moving average, then count local maxima whose prominence beats
    // three standard deviations of Poisson noise
    const std::size_t n = c.size();
    std::vector<double> v(n);
    const std::size_t h = window / 2;
    for (std::size_t i = 0; i < n; i++) {
        // symmetric window, shrunk near the edges so they do not tilt
        const std::size_t w = std::min({h, i, n - 1 - i});
        std::size_t lo = i - w, hi = i + w;
        double s = 0;
        for (std::size_t j = lo; j <= hi; j++) s += double(c[j]);
        v[i] = s / double(hi - lo + 1);
    }
    int peaks = 0;
    for (std::size_t i = 1; i + 1 < n; i++) {
        if (!(v[i] >= v[i - 1] && v[i] > v[i + 1])) continue;
        // lowest point on each side before something higher
        double left = v[i], right = v[i];
        for (std::size_t j = i; j-- > 0;) {
            if (v[j] > v[i]) break;
            left = std::min(left, v[j]);
        }
        for (std::size_t j = i + 1; j < n; j++) {
            if (v[j] > v[i]) break;
            right = std::min(right, v[j]);
        }
        double prom = v[i] - std::max(left, right);
        if (prom > 3 * std::sqrt(std::max(v[i], 1.0) / double(std::max<std::size_t>(window, 1)))) peaks++;
    }
    return peaks;
}

}  // namespace nilq
