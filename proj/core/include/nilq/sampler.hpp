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

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nilq/config.hpp"
#include "nilq/state.hpp"

namespace nilq {

// mt19937_64 with hand-rolled uniform/normal transforms so the stream does not
// depend on the standard library's distribution implementations.
class Rng {
   public:
    explicit Rng(uint64_t seed) : eng_(seed) {
    }
    // uniform in [0, 1) with 53 random bits
    double uniform();
    // standard normal, Box-Muller
    double normal();

   private:
    std::mt19937_64 eng_;
    std::optional<double> spare_;
};

PureState haar_sample(int n, uint64_t seed);

struct SampleRow {
    std::size_t index = 0;
    uint64_t seed = 0;
    bool converged = false;
    double k4 = 0;
    std::optional<double> s1, nonunitarity, s2;
    std::string family;
    std::string class_tag;
    std::string error;
};

// Per-state seed = seed + index. threads = 0 picks hardware concurrency.
std::vector<SampleRow> sample_measures(int n, std::size_t count, uint64_t seed, const FlowConfig &cfg,
                                       unsigned threads = 0, bool k4_only = false);

struct Histogram {
    std::vector<double> low, high;
    std::vector<std::size_t> counts;
    std::size_t sample_count = 0;
    std::size_t nonconvergent = 0;
    std::size_t out_of_range = 0;
    std::size_t mode_bin = 0;
    double mean = 0;
    uint64_t seed = 0;
};

Histogram k4_histogram(std::size_t count, std::size_t bins, uint64_t seed, const FlowConfig &cfg,
                       unsigned threads = 0);
std::string histogram_csv(const Histogram &h);
std::string samples_csv(const std::vector<SampleRow> &rows);

// Interior local maxima of the smoothed counts with prominence above Poisson noise.
int interior_peaks(const std::vector<std::size_t> &counts, std::size_t window = 5);

}  // namespace nilq
