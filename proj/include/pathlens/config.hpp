// Copyright (c) 2026 The PathLens Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace pathlens {

struct AnalyzerConfig {
    std::string entry = "main";
    bool run_backward = true;

    // backward budgets
    long max_steps = 50000;
    int max_conjuncts = 512;
    int max_stack = 3;
    int unroll = 2;
    bool footprint_skip = true;

    // forward knobs
    int k_prim = 4;
    long forward_max_visits = 500000;
    int max_context_depth = 12;

    bool show_excluded = false;  // surface the excluded error class in reports
    std::vector<std::string> summary_files;
    std::vector<std::string> summary_search_dirs;
};

}  // namespace pathlens
