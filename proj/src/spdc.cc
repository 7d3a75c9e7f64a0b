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

#include "twinbeam/spdc.h"

#include <cmath>
#include <stdexcept>

#include "twinbeam/errors.h"

namespace twinbeam {

namespace {

void check_params(const SpdcParams &p) {
    if (!(p.tau >= 0) || !std::isfinite(p.tau)) {
        throw std::invalid_argument("tau must be a finite non-negative number");
    }
    if (p.n_max < 0) {
        throw std::invalid_argument("n_max must be non-negative");
    }
}

// Mass of pair numbers above n_max: sum_{n > N} (n+1) x^n (1-x)^2 = x^(N+1) ((N+2) - (N+1) x).
double tail_mass(double x, int n_max) {
    double n = static_cast<double>(n_max);
    return std::pow(x, n + 1.0) * ((n + 2.0) - (n + 1.0) * x);
}

}  // namespace

FockState pair_state(int n) {
    if (n < 0) {
        throw std::invalid_argument("pair number must be non-negative");
    }
    auto un = static_cast<std::uint32_t>(n);
    double amp = 1.0 / std::sqrt(static_cast<double>(n) + 1.0);
    std::vector<FockState::Term> terms;
    for (std::uint32_t m = 0; m <= un; m++) {
        terms.push_back({Occupation{un - m, m, m, un - m}, Complex{m % 2 == 0 ? amp : -amp, 0.0}});
    }
    return FockState::from_terms(terms);
}

PairDistribution pair_distribution(const SpdcParams &p) {
    check_params(p);
    double x = std::pow(std::tanh(p.tau), 2);
    double vacuum = 1.0 / std::pow(std::cosh(p.tau), 4);
    PairDistribution out;
    double xn = 1.0;
    for (int n = 0; n <= p.n_max; n++) {
        out.probabilities.push_back((n + 1) * xn * vacuum);
        xn *= x;
    }
    out.truncation_loss = tail_mass(x, p.n_max);
    return out;
}

double mean_pair_number(double tau) {
    return 2.0 * std::pow(std::sinh(tau), 2);
}

int adequate_truncation(double tau, double max_loss, int cap) {
    double x = std::pow(std::tanh(tau), 2);
    for (int n = 0; n <= cap; n++) {
        if (tail_mass(x, n) < max_loss) {
            return n;
        }
    }
    return -1;
}

FockState spdc_state(const SpdcParams &p) {
    auto dist = pair_distribution(p);
    FockState out;
    for (int n = 0; n <= p.n_max; n++) {
        out = out + pair_state(n).scaled(std::sqrt(dist.probabilities[static_cast<std::size_t>(n)]));
    }
    return out;
}

int sample_emission(const SpdcParams &p, Rng &rng) {
    auto dist = pair_distribution(p);
    if (!(dist.truncation_loss < kMaxTruncationLoss)) {
        throw TruncationTooCoarse(dist.truncation_loss);
    }
    std::discrete_distribution<int> pick(dist.probabilities.begin(), dist.probabilities.end());
    return pick(rng);
}

int sample_emission(const SpdcParams &p, std::uint64_t seed) {
    Rng rng(seed);
    return sample_emission(p, rng);
}

}  // namespace twinbeam
