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

#include "twinbeam/detector.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "twinbeam/errors.h"
#include "twinbeam/optics.h"
#include "twinbeam/spdc.h"

namespace twinbeam {

namespace {

constexpr Occupation kHV{2, 0, 0, 2};
constexpr Occupation kVH{0, 2, 2, 0};
constexpr Occupation kMixed{1, 1, 1, 1};

// Window classes of the four-photon detector: build_windows(alpha, theta, 2)
// puts the unshifted probe (symmetric terms) in class 1 and the +-theta
// probes (all four photons in one spatial mode) in class 2.
constexpr int kSymmetricClass = 1;
constexpr int kAsymmetricClass = 2;

constexpr double kFamilyTolerance = 1e-9;
constexpr double kSectorTolerance = 1e-9;

struct ClassSummary {
    double weight = 0;
    double heaviest_weight = -1;
    double representative_x = 0;
};

// Groups probe branches by the window containing their quadrature mean.
std::map<int, ClassSummary> summarize(const HybridState &h, const WindowTable &windows, double &tail_error) {
    std::map<int, ClassSummary> out;
    for (const auto &b : h.branches()) {
        double mean = quadrature_mean(b.label);
        double w = b.signal.norm2();
        int cls = windows.classify(mean);
        const auto &win = windows.window_for(cls);
        auto &s = out[cls];
        s.weight += w;
        if (w > s.heaviest_weight) {
            s.heaviest_weight = w;
            s.representative_x = mean;
        }
        tail_error += w * (1.0 - quadrature_window_mass(mean, win.lower, win.upper));
    }
    return out;
}

std::optional<double> family_coefficient(const FockState &state, bool check_span) {
    Complex hv = state.amplitude(kHV);
    Complex vh = state.amplitude(kVH);
    Complex mixed = state.amplitude(kMixed);
    double scale = state.norm();
    if (scale == 0 || std::abs(hv) <= kFamilyTolerance * scale) {
        return std::nullopt;
    }
    if (std::abs(hv - vh) > kFamilyTolerance * scale) {
        return std::nullopt;
    }
    if (check_span) {
        double in_span = std::norm(hv) + std::norm(vh) + std::norm(mixed);
        if (state.norm2() - in_span > kFamilyTolerance * state.norm2()) {
            return std::nullopt;
        }
    }
    Complex c = -mixed / hv;
    if (std::abs(c.imag()) >= kFamilyTolerance) {
        return std::nullopt;
    }
    return c.real();
}

void check_four_photon_input(const FockState &input) {
    double off_layout = 0;
    for (const auto &[occ, amp] : input.terms()) {
        if (occ.total() != 4) {
            throw BadInput("symmetry detector needs four-photon input, got term " + occ.str());
        }
        if (occ.spatial_a() != 2) {
            off_layout += std::norm(amp);
        }
    }
    if (input.empty()) {
        throw BadInput("symmetry detector input is the zero state");
    }
    if (off_layout > kFamilyTolerance * input.norm2()) {
        throw BadInput("symmetry detector needs two photons in each spatial mode");
    }
}

HybridState detector_circuit(const FockState &input, double alpha, double theta) {
    FockState split = beam_splitter(input);
    return cross_kerr(HybridState::product(split, alpha), PhaseConfig::fig1(theta));
}

DetectorBranch make_branch(const HybridState &h, const WindowTable &windows, double theta, double x,
                           double weight) {
    auto outcome = project(h, x, windows, FeedForward{theta, kAsymmetricClass});
    const auto &win = windows.window_for(outcome.declared_class);
    DetectorBranch branch{
        outcome.declared_class == kSymmetricClass ? Symmetry::Symmetric : Symmetry::Asymmetric,
        weight,
        window_probability(h, win.lower, win.upper),
        outcome.post_state,
        std::nullopt,
        x,
    };
    if (branch.kind == Symmetry::Symmetric) {
        branch.c_out = family_coefficient(branch.state, false);
    }
    return branch;
}

// Shared by the public detector and the cascade; input validation is the caller's job.
DetectorResult run_detector(const FockState &input, double alpha, double theta, Rng *rng) {
    WindowTable windows = build_windows(alpha, theta, 2);
    HybridState h = detector_circuit(input, alpha, theta);
    DetectorResult result;
    auto classes = summarize(h, windows, result.tail_error);
    if (rng == nullptr) {
        for (const auto &[cls, summary] : classes) {
            result.branches.push_back(make_branch(h, windows, theta, summary.representative_x, summary.weight));
        }
        return result;
    }
    double x = sample_outcome(h, *rng);
    int cls = windows.classify(x);
    auto it = classes.find(cls);
    result.branches.push_back(make_branch(h, windows, theta, x, it == classes.end() ? 0.0 : it->second.weight));
    return result;
}

void check_cascade_args(double c0, int k) {
    if (k < 1) {
        throw std::invalid_argument("cascade needs at least one stage");
    }
    if (!(c0 > -1.0)) {
        throw PoleError("c0 = " + std::to_string(c0) + " is outside the basin c > -1 of c -> 2/(1+c)");
    }
}

}  // namespace

FourPhotonFamily::FourPhotonFamily(double c) : c_(c) {
    if (!std::isfinite(c)) {
        throw std::invalid_argument("family coefficient must be finite");
    }
}

FockState FourPhotonFamily::state() const {
    double n = 1.0 / std::sqrt(2.0 + c_ * c_);
    return FockState::from_terms({{kHV, n}, {kVH, n}, {kMixed, -c_ * n}});
}

double symmetric_probability(double c) {
    return 1.0 / (1.0 + (1.0 - c) * (1.0 - c) / (2.0 + (1.0 + c) * (1.0 + c)));
}

double next_coefficient(double c) {
    if (c == -1.0) {
        throw PoleError("c = -1 is a pole of c -> 2/(1+c)");
    }
    return 2.0 / (1.0 + c);
}

const DetectorBranch *DetectorResult::find(Symmetry kind) const {
    for (const auto &b : branches) {
        if (b.kind == kind) {
            return &b;
        }
    }
    return nullptr;
}

DetectorResult symmetry_detector(const FockState &input, double alpha, double theta, const DetectionMode &mode) {
    if (const auto *sampled = std::get_if<Sampled>(&mode)) {
        Rng rng(sampled->seed);
        return symmetry_detector(input, alpha, theta, rng);
    }
    check_four_photon_input(input);
    return run_detector(input, alpha, theta, nullptr);
}

DetectorResult symmetry_detector(const FockState &input, double alpha, double theta, Rng &rng) {
    check_four_photon_input(input);
    return run_detector(input, alpha, theta, &rng);
}

std::vector<IterationRecord> cascade_closed_form(double c0, int k) {
    check_cascade_args(c0, k);
    std::vector<IterationRecord> out;
    double c = c0;
    double cumulative = 1.0;
    for (int i = 1; i <= k; i++) {
        double p = symmetric_probability(c);
        c = next_coefficient(c);
        cumulative *= p;
        out.push_back({i, c, p, cumulative});
    }
    return out;
}

CascadeRun cascade_simulated(double c0, int k, double alpha, double theta, const DetectionMode &mode) {
    check_cascade_args(c0, k);
    std::optional<Rng> rng;
    if (const auto *sampled = std::get_if<Sampled>(&mode)) {
        rng.emplace(sampled->seed);
    }
    CascadeRun run{{}, FourPhotonFamily(c0).state()};
    double cumulative = 1.0;
    for (int i = 1; i <= k; i++) {
        auto result = run_detector(run.final_state, alpha, theta, rng ? &*rng : nullptr);
        const auto *sym = result.find(Symmetry::Symmetric);
        if (sym == nullptr) {
            throw CascadeAborted(i);
        }
        auto c = family_coefficient(sym->state, false);
        if (!c) {
            throw NotInFamily("stage " + std::to_string(i) + " output left the four-photon family");
        }
        cumulative *= sym->probability;
        run.records.push_back({i, *c, sym->probability, cumulative});
        run.final_state = sym->state;
    }
    return run;
}

double extract_c(const FockState &state) {
    auto c = family_coefficient(state, true);
    if (!c) {
        throw NotInFamily("state is not of the form N(|2,0;0,2> + |0,2;2,0> - c|1,1;1,1>) with real c");
    }
    return *c;
}

PairClassifier::PairClassifier(double alpha, double theta, int n_max)
    : alpha_(alpha), theta_(theta), n_max_(n_max), windows_(build_windows(alpha, theta, n_max)) {}

PairClassifier::Prepared PairClassifier::prepare(const FockState &input, bool allow_overflow) const {
    if (!input.is_normalized()) {
        throw NotNormalized(input.norm());
    }
    std::map<std::uint32_t, FockState::Terms> sectors;
    for (const auto &[occ, amp] : input.terms()) {
        if (occ[Mode::AH] != occ[Mode::BV] || occ[Mode::AV] != occ[Mode::BH]) {
            throw BadInput("term " + occ.str() + " is not part of any pair state");
        }
        sectors[occ.spatial_a()].emplace(occ, amp);
    }
    for (auto &[m, terms] : sectors) {
        if (static_cast<int>(m) > n_max_ && !allow_overflow) {
            throw BadInput("input has a " + std::to_string(m) + "-pair sector above n_max = " +
                           std::to_string(n_max_));
        }
        FockState sector = FockState::from_map(terms);
        double overlap = std::norm(inner_product(pair_state(static_cast<int>(m)), sector));
        if (overlap < (1.0 - kSectorTolerance) * sector.norm2()) {
            throw BadInput("the " + std::to_string(m) + "-pair sector is not proportional to the pair state");
        }
    }

    Prepared out;
    out.vacuum_weight = std::norm(input.amplitude(Occupation{}));
    FockState::Terms rest_terms = input.terms();
    rest_terms.erase(Occupation{});
    FockState rest = FockState::from_map(std::move(rest_terms));
    if (!rest.empty()) {
        FockState split = beam_splitter(normalize(rest));
        out.hybrid = cross_kerr(HybridState::product(split, alpha_), PhaseConfig::npair(theta_));
    }
    return out;
}

Classification PairClassifier::analyze(const Prepared &prepared) const {
    Classification out;
    for (int m = 0; m <= n_max_; m++) {
        out.distribution[m] = 0.0;
    }
    if (prepared.vacuum_weight > 0) {
        out.distribution[0] = prepared.vacuum_weight;
        out.post_states[0] = FockState::vacuum();
    }
    if (!prepared.hybrid) {
        return out;
    }
    double signal_weight = 1.0 - prepared.vacuum_weight;
    double tail = 0;
    auto classes = summarize(*prepared.hybrid, windows_, tail);
    out.tail_error = tail * signal_weight;
    for (const auto &[cls, summary] : classes) {
        out.distribution[cls] += summary.weight * signal_weight;
        out.post_states[cls] = project(*prepared.hybrid, summary.representative_x, windows_).post_state;
    }
    return out;
}

Classification PairClassifier::sample(const Prepared &prepared, Rng &rng) const {
    Classification out;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (!prepared.hybrid || (prepared.vacuum_weight > 0 && unit(rng) < prepared.vacuum_weight)) {
        out.declared = 0;
        out.distribution[0] = 1.0;
        out.post_states[0] = FockState::vacuum();
        return out;
    }
    double x = sample_outcome(*prepared.hybrid, rng);
    auto outcome = project(*prepared.hybrid, x, windows_);
    out.declared = outcome.declared_class;
    out.x = x;
    out.distribution[outcome.declared_class] = 1.0;
    out.post_states[outcome.declared_class] = outcome.post_state;
    return out;
}

Classification classify_pairs(const FockState &input, double alpha, double theta, int n_max,
                              const DetectionMode &mode) {
    PairClassifier classifier(alpha, theta, n_max);
    auto prepared = classifier.prepare(input);
    if (const auto *sampled = std::get_if<Sampled>(&mode)) {
        Rng rng(sampled->seed);
        return classifier.sample(prepared, rng);
    }
    return classifier.analyze(prepared);
}

}  // namespace twinbeam
