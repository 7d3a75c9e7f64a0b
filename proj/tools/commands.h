// Copyright 2026 The twinbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TWINBEAM_TOOLS_COMMANDS_H
#define TWINBEAM_TOOLS_COMMANDS_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace twinbeam::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInvalidConfig = 2,
    kNumericPrecondition = 3,
};

struct RunConfig {
    double c0 = 2.0;
    int k = 10;
    double tau = 0.5;
    int n_max = 4;
    int source_n_max = -1;  // -1: pick the smallest truncation with loss < 1e-6
    double alpha = 1e5;
    double theta = 0.01;
    std::uint64_t seed = 42;
    std::string mode = "analytic";
    std::string out;
    int shots = 10000;
};

/// Runs one subcommand (figure3, detect, cascade, classify, spdc). `args`
/// excludes the program name. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace twinbeam::cli

#endif
