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

#ifndef TWINBEAM_PROBE_HOMODYNE_H
#define TWINBEAM_PROBE_HOMODYNE_H

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "twinbeam/fock_state.h"
#include "twinbeam/hybrid_state.h"

namespace twinbeam {

using Rng = std::mt19937_64;

/// <x|label> for the X quadrature x = a + a^dag:
///   (2 pi)^(-1/4) exp[-(Im label)^2 - (x - 2 label)^2 / 4].
/// Evaluated as exp[-(x - 2 Re label)^2/4 + i Im(label) (x - 2 Re label)], which is
/// the same expression with the large canceling real parts removed analytically.
Complex homodyne_kernel(double x, Complex label);

/// Exponent of homodyne_kernel without the (2 pi)^(-1/4) prefactor.
Complex homodyne_log_kernel(double x, Complex label);

/// Mean of the X-quadrature distribution for probe |label>.
inline double quadrature_mean(Complex label) {
    return 2.0 * label.real();
}

/// Mass of the unit-variance outcome Gaussian centered at `mean` inside (lower, upper].
double quadrature_window_mass(double mean, double lower, double upper);

/// Integral over x of conj(<x|lhs>) <x|rhs>.
Complex kernel_overlap(Complex lhs, Complex rhs);

/// Probability density of outcome x: || sum_b <x|label_b> signal_b ||^2.
double outcome_pdf(const HybridState &h, double x);

/// Exact probability that x falls in (lower, upper]. Infinite bounds allowed.
double window_probability(const HybridState &h, double lower, double upper);

/// Decision windows over homodyne outcomes; each window declares a pair count.
class WindowTable {
   public:
    struct Window {
        int class_id;
        double lower;  // exclusive; may be -inf
        double upper;  // inclusive; may be +inf
    };

    WindowTable() = default;
    /// Windows must be contiguous, ordered by increasing class id with
    /// decreasing x, and together cover the real line.
    explicit WindowTable(std::vector<Window> windows);

    const std::vector<Window> &windows() const { return windows_; }
    int classify(double x) const;
    const Window &window_for(int class_id) const;

   private:
    std::vector<Window> windows_;
};

/// Windows for m = 1..n_max: class m has probe mean 2 alpha cos((m-1) theta),
/// with boundaries at alpha [cos(m theta) + cos((m-1) theta)].
/// Requires alpha > 0, theta > 0, n_max >= 1 and theta * n_max < pi/2.
WindowTable build_windows(double alpha, double theta, int n_max);

/// Phase correction applied after a homodyne outcome declares `target_class`:
/// phase -phi_x on every photon of spatial mode b, where
/// phi_x = -alpha sin(theta) (x - 2 alpha cos theta) / 2 mod 2 pi.
struct FeedForward {
    double theta;
    int target_class;
};

double feed_forward_phase(double alpha, double theta, double x);

struct HomodyneOutcome {
    double x;
    int declared_class;
    FockState post_state;
    bool correction_applied;
};

/// Conditional signal state for outcome x (exact, including every branch).
/// Throws ZeroDensity if the conditional state vanishes.
HomodyneOutcome project(const HybridState &h, double x, const WindowTable &windows,
                        const std::optional<FeedForward> &correction = std::nullopt);

/// Draws x from the outcome distribution. Branches whose quadrature means lie
/// within 10 standard deviations of each other are sampled jointly with their
/// interference terms; better separated groups are treated as orthogonal.
double sample_outcome(const HybridState &h, Rng &rng);
double sample_outcome(const HybridState &h, std::uint64_t seed);

}  // namespace twinbeam

#endif
