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

#ifndef TWINBEAM_ERRORS_H
#define TWINBEAM_ERRORS_H

#include <stdexcept>
#include <string>

namespace twinbeam {

/// Raised when an input violates a numeric precondition of the model
/// (as opposed to a malformed configuration). The CLI maps these to exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroState : NumericError {
    ZeroState() : NumericError("cannot normalize a zero state") {}
};

struct NotNormalized : NumericError {
    explicit NotNormalized(double norm)
        : NumericError("state is not normalized (norm = " + std::to_string(norm) + ")") {}
};

struct ZeroDensity : NumericError {
    explicit ZeroDensity(double x)
        : NumericError("homodyne outcome x = " + std::to_string(x) + " has zero probability density") {}
};

struct InvalidGeometry : NumericError {
    using NumericError::NumericError;
};

struct BadInput : NumericError {
    using NumericError::NumericError;
};

struct NotInFamily : NumericError {
    using NumericError::NumericError;
};

struct PoleError : NumericError {
    using NumericError::NumericError;
};

struct TruncationTooCoarse : NumericError {
    explicit TruncationTooCoarse(double loss)
        : NumericError("SPDC truncation too coarse: probability loss " + std::to_string(loss) + " >= 1e-6"),
          loss(loss) {}
    double loss;
};

struct CascadeAborted : NumericError {
    explicit CascadeAborted(int stage)
        : NumericError("cascade aborted: asymmetric outcome at stage " + std::to_string(stage)), stage(stage) {}
    int stage;
};

}  // namespace twinbeam

#endif
