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

#include "twinbeam/optics.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "twinbeam/errors.h"

namespace twinbeam {

namespace {

struct TwoModeTerm {
    std::uint32_t a;
    std::uint32_t b;
    double coef;
};

double log_factorial(std::uint32_t n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(std::uint32_t n, std::uint32_t k) {
    double r = 1;
    for (std::uint32_t i = 1; i <= k; i++) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

// Image of |m>_a |r>_b for one polarization under
// a^dag -> (a^dag + s b^dag)/sqrt2, b^dag -> (b^dag - s a^dag)/sqrt2.
std::vector<TwoModeTerm> split_two_mode(std::uint32_t m, std::uint32_t r, double s) {
    std::uint32_t total = m + r;
    std::vector<double> coefs(total + 1, 0.0);  // indexed by photons ending in a
    for (std::uint32_t j = 0; j <= m; j++) {
        double cj = binomial(m, j) * std::pow(s, m - j);
        for (std::uint32_t k = 0; k <= r; k++) {
            double ck = binomial(r, k) * std::pow(-s, r - k);
            coefs[j + r - k] += cj * ck;
        }
    }
    double log_in = log_factorial(m) + log_factorial(r);
    double scale = std::pow(2.0, -0.5 * total);
    std::vector<TwoModeTerm> out;
    for (std::uint32_t p = 0; p <= total; p++) {
        if (coefs[p] == 0) {
            continue;
        }
        std::uint32_t q = total - p;
        double norm = std::exp(0.5 * (log_factorial(p) + log_factorial(q) - log_in));
        out.push_back({p, q, coefs[p] * scale * norm});
    }
    return out;
}

}  // namespace

PhaseConfig PhaseConfig::fig1(double theta) {
    return {1.5 * theta, theta, -5.0 * theta};
}

PhaseConfig PhaseConfig::npair(double theta) {
    return {2.0 * theta / 3.0, theta / 3.0, -theta};
}

PhaseConfig PhaseConfig::preset(std::string_view name, double theta) {
    if (name == "fig1") {
        return fig1(theta);
    }
    if (name == "npair") {
        return npair(theta);
    }
    throw std::invalid_argument("unknown phase preset '" + std::string(name) + "' (expected fig1 or npair)");
}

double PhaseConfig::phase_for(const Occupation &occ) const {
    return static_cast<double>(occ.spatial_a()) * rate_a + static_cast<double>(occ.spatial_b()) * rate_b +
           probe_gate;
}

FockState beam_splitter(const FockState &s, BeamSplitterConvention convention) {
    if (!s.is_normalized()) {
        throw NotNormalized(s.norm());
    }
    double sign = convention == BeamSplitterConvention::Standard ? 1.0 : -1.0;
    FockState::Terms out;
    for (const auto &[occ, amp] : s.terms()) {
        auto h = split_two_mode(occ[Mode::AH], occ[Mode::BH], sign);
        auto v = split_two_mode(occ[Mode::AV], occ[Mode::BV], sign);
        for (const auto &th : h) {
            for (const auto &tv : v) {
                out[Occupation{th.a, tv.a, th.b, tv.b}] += amp * (th.coef * tv.coef);
            }
        }
    }
    return FockState::from_map(std::move(out));
}

FockState phase_shift(const FockState &s, Mode m, double phi) {
    FockState::Terms out;
    for (const auto &[occ, amp] : s.terms()) {
        out.emplace_hint(out.end(), occ, amp * std::polar(1.0, static_cast<double>(occ[m]) * phi));
    }
    return FockState::from_map(std::move(out));
}

HybridState cross_kerr(const HybridState &h, const PhaseConfig &cfg) {
    std::vector<ProbeBranch> out;
    for (const auto &branch : h.branches()) {
        double magnitude = std::abs(branch.label);
        double base_phase = std::arg(branch.label);
        // Terms with the same spatial photon numbers share a phase exactly.
        std::map<std::pair<std::uint32_t, std::uint32_t>, FockState::Terms> groups;
        for (const auto &[occ, amp] : branch.signal.terms()) {
            groups[{occ.spatial_a(), occ.spatial_b()}].emplace(occ, amp);
        }
        for (auto &[key, terms] : groups) {
            double phase = base_phase + cfg.phase_for(Occupation{key.first, 0, key.second, 0});
            out.push_back({std::polar(magnitude, phase), FockState::from_map(std::move(terms))});
        }
    }
    return HybridState(h.base_alpha(), std::move(out));
}

}  // namespace twinbeam
