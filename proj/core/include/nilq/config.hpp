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

namespace nilq {

// Flow parameters and tolerances shared by all reductions.
struct FlowConfig {
    double dt0 = 0.1;
    double dt_max = 1.0;
    double tol_linear = 1e-9;
    double tol_phase = 1e-9;
    int max_iters = 50000;
    // extra iterations after tol_linear is met, stops early once the residual stalls
    int polish_iters = 2000;
    double tol_polish = 1e-15;
    // 0 means all 2^n eigenframe starts
    int su_starts = 0;
    double tol_cubic = 1e-9;
    double tol_det = 1e-8;
    double tol_gamma = 1e-7;
    double tol_class = 1e-7;
    double tol_radicand = 1e-10;
    double epsilon_ref = 1e-10;
    double tol_criterion = 1e-9;
};

}  // namespace nilq
