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

#ifndef TWINBEAM_DETECTOR_H
#define TWINBEAM_DETECTOR_H

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "twinbeam/fock_state.h"
#include "twinbeam/hybrid_state.h"
#include "twinbeam/probe_homodyne.h"

namespace twinbeam {

/// Operating point used when none is given: alpha * theta^2 = 10.
inline constexpr double kDefaultAlpha = 1e5;
inline constexpr double kDefaultTheta = 0.01;

/// Four-photon family N(|2,0;0,2> + |0,2;2,0> - c |1,1;1,1>), N^2 = 1/(2 + c^2).
class FourPhotonFamily {
   public:
    explicit FourPhotonFamily(double c);

    double c() const { return c_; }
    FockState state() const;

   private:
    double c_;
};

/// Closed-form symmetric-outcome probability of one detector for input coefficient c.
double symmetric_probability(double c);
/// Closed-form coefficient after a symmetric outcome, 2 / (1 + c).
double next_coefficient(double c);

/// Exact branch weights (no measurement noise).
struct Analytic {};
/// One simulated measurement, reproducible from the seed.
struct Sampled {
    std::uint64_t seed;
};
using DetectionMode = std::variant<Analytic, Sampled>;

enum class Symmetry { Symmetric, Asymmetric };

struct DetectorBranch {
    Symmetry kind;
    /// Weight of the probe branches whose quadrature mean lies in this outcome's window.
    double probability;
    /// Exact integral of the outcome density over the window (includes Gaussian tails).
    double window_probability;
    FockState state;
    std::optional<double> c_out;  // set for symmetric outcomes inside the four-photon family
    double x;                     // outcome used for the projection
};

struct DetectorResult {
    std::vector<DetectorBranch> branches;
    /// Probability that x lands outside the window of the branch that produced it.
    double tail_error = 0;

    const DetectorBranch *find(Symmetry kind) const;
};

/// Beam splitter, cross-Kerr (3 theta/2, theta, -5 theta) and X homodyne detection on a
/// four-photon input with two photons in each spatial mode. Analytic mode returns every
/// outcome with non-zero weight; sampled mode returns the one outcome observed.
/// Asymmetric outcomes receive the feed-forward phase correction.
DetectorResult symmetry_detector(const FockState &input, double alpha, double theta, const DetectionMode &mode);
DetectorResult symmetry_detector(const FockState &input, double alpha, double theta, Rng &rng);

struct IterationRecord {
    int i;
    double c;
    double p;
    double cumulative_p;
};

/// c_i = 2/(1 + c_{i-1}), P_i = symmetric_probability(c_{i-1}), for i = 1..k.
/// Throws PoleError for c0 <= -1.
std::vector<IterationRecord> cascade_closed_form(double c0, int k);

struct CascadeRun {
    std::vector<IterationRecord> records;
    FockState final_state;
};

/// Runs k detectors in sequence on the four-photon family state, keeping only symmetric
/// outcomes. In sampled mode an asymmetric outcome throws CascadeAborted.
CascadeRun cascade_simulated(double c0, int k, double alpha, double theta, const DetectionMode &mode);

/// Inverse of the family parametrization: -amp|1,1;1,1> / amp|2,0;0,2>.
/// Throws NotInFamily unless the state lies in the family span with equal
/// |2,0;0,2>, |0,2;2,0> amplitudes and a real coefficient.
double extract_c(const FockState &state);

struct Classification {
    /// Class 0 is the vacuum; class m >= 1 is the m-pair window.
    std::map<int, double> distribution;
    std::map<int, FockState> post_states;
    double tail_error = 0;
    std::optional<int> declared;  // sampled mode only
    std::optional<double> x;      // sampled mode only, absent for vacuum shots
};

/// Pair-number classifier: beam splitter, cross-Kerr (2 theta/3, theta/3, -theta) and
/// homodyne windows for m = 1..n_max.
class PairClassifier {
   public:
    PairClassifier(double alpha, double theta, int n_max);

    double alpha() const { return alpha_; }
    double theta() const { return theta_; }
    int n_max() const { return n_max_; }
    const WindowTable &windows() const { return windows_; }

    /// Circuit image of an input, reusable across shots.
    struct Prepared {
        double vacuum_weight = 0;
        std::optional<HybridState> hybrid;  // normalized, absent for pure vacuum
    };

    /// The input must be a superposition of |psi_m^-> sectors. Sectors above n_max are
    /// rejected unless allow_overflow is set, in which case they land in the n_max window.
    Prepared prepare(const FockState &input, bool allow_overflow = false) const;

    Classification analyze(const Prepared &prepared) const;
    Classification sample(const Prepared &prepared, Rng &rng) const;

   private:
    double alpha_;
    double theta_;
    int n_max_;
    WindowTable windows_;
};

Classification classify_pairs(const FockState &input, double alpha, double theta, int n_max,
                              const DetectionMode &mode);

}  // namespace twinbeam

#endif
