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

#ifndef TWINBEAM_OPTICS_H
#define TWINBEAM_OPTICS_H

#include <string_view>

#include "twinbeam/fock_state.h"
#include "twinbeam/hybrid_state.h"

namespace twinbeam {

/// Sign convention of the 50:50 beam splitter, applied identically to both
/// polarizations.
///   Standard: a^dag -> (a^dag + b^dag)/sqrt2, b^dag -> (b^dag - a^dag)/sqrt2
///   Inverse:  a^dag -> (a^dag - b^dag)/sqrt2, b^dag -> (b^dag + a^dag)/sqrt2
/// Standard equals exp(-i H) for H = -i pi (a^dag b - a b^dag)/4.
enum class BeamSplitterConvention { Standard, Inverse };

/// Cross-Kerr phase rates seen by the probe, in radians per signal photon of
/// each spatial mode, plus a constant phase gate on the probe.
struct PhaseConfig {
    double rate_a = 0;
    double rate_b = 0;
    double probe_gate = 0;

    /// Four-photon symmetry detector: (3 theta/2, theta, -5 theta).
    static PhaseConfig fig1(double theta);
    /// Pair-number classifier: (2 theta/3, theta/3, -theta).
    static PhaseConfig npair(double theta);
    /// "fig1" or "npair"; throws std::invalid_argument otherwise.
    static PhaseConfig preset(std::string_view name, double theta);

    /// Total probe phase picked up by a signal term.
    double phase_for(const Occupation &occ) const;
};

/// 50:50 beam splitter between spatial modes a and b. Requires a normalized
/// input (NotNormalized otherwise).
FockState beam_splitter(const FockState &s,
                        BeamSplitterConvention convention = BeamSplitterConvention::Standard);

/// Multiplies every term by exp(i * n_m * phi).
FockState phase_shift(const FockState &s, Mode m, double phi);

/// Moves each signal basis term to the probe branch rotated by the term's
/// Kerr phase. Signal amplitudes are untouched; coinciding labels merge.
HybridState cross_kerr(const HybridState &h, const PhaseConfig &cfg);

}  // namespace twinbeam

#endif
