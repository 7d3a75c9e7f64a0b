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

#ifndef TWINBEAM_HYBRID_STATE_H
#define TWINBEAM_HYBRID_STATE_H

#include <vector>

#include "twinbeam/fock_state.h"

namespace twinbeam {

/// Relative tolerance under which two coherent probe labels are treated as the same branch.
inline constexpr double kLabelMergeTolerance = 1e-12;

/// One component of a signal-probe superposition: the coherent probe |label>
/// tensored with an (unnormalized) signal state.
struct ProbeBranch {
    Complex label;
    FockState signal;
};

/// Joint signal/probe state sum_b |signal_b> |label_b>, where every label is a
/// coherent-state amplitude. Branches are kept sorted by probe phase, and
/// branches whose labels coincide are merged.
class HybridState {
   public:
    HybridState() = default;
    HybridState(double base_alpha, std::vector<ProbeBranch> branches);

    /// signal (x) |alpha> with a real probe amplitude alpha.
    static HybridState product(const FockState &signal, double alpha);

    double base_alpha() const { return base_alpha_; }
    const std::vector<ProbeBranch> &branches() const { return branches_; }
    std::size_t size() const { return branches_.size(); }

    /// Sum of the squared signal norms over all branches.
    double joint_norm2() const;
    bool is_normalized(double tol = kNormTolerance) const;

   private:
    double base_alpha_ = 0;
    std::vector<ProbeBranch> branches_;
};

bool labels_coincide(Complex lhs, Complex rhs);

}  // namespace twinbeam

#endif
