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

#ifndef TWINBEAM_SPDC_H
#define TWINBEAM_SPDC_H

#include <cstdint>
#include <vector>

#include "twinbeam/fock_state.h"
#include "twinbeam/probe_homodyne.h"

namespace twinbeam {

/// Largest truncation loss sample_emission accepts.
inline constexpr double kMaxTruncationLoss = 1e-6;

struct SpdcParams {
    double tau = 0;  // interaction parameter kappa t / hbar
    int n_max = 0;   // highest pair number kept
};

/// |psi_n^->: n indistinguishable pairs,
/// sum_m (-1)^m |n-m, m; m, n-m> / sqrt(n+1).
FockState pair_state(int n);

struct PairDistribution {
    std::vector<double> probabilities;  // p_n for n = 0..n_max, not renormalized
    double truncation_loss = 0;         // 1 - sum of probabilities
};

/// p_n = (n+1) tanh^(2n)(tau) / cosh^4(tau).
PairDistribution pair_distribution(const SpdcParams &p);

/// Mean pair number of the untruncated source, 2 sinh^2(tau).
double mean_pair_number(double tau);

/// Smallest n_max whose truncation loss is below `max_loss`, or -1 if none up to `cap`.
int adequate_truncation(double tau, double max_loss = kMaxTruncationLoss, int cap = 1000);

/// Truncated source state sum_{n<=n_max} sqrt(p_n) |psi_n^->; its squared norm is 1 - loss.
FockState spdc_state(const SpdcParams &p);

/// Draws a pair number from the truncated distribution, renormalized.
/// Throws TruncationTooCoarse when the truncation loss is not below 1e-6.
int sample_emission(const SpdcParams &p, Rng &rng);
int sample_emission(const SpdcParams &p, std::uint64_t seed);

}  // namespace twinbeam

#endif
