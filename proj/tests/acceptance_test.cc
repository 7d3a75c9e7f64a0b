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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dense_oracle.h"
#include "quadrature.h"
#include "twinbeam/detector.h"
#include "twinbeam/optics.h"
#include "twinbeam/probe_homodyne.h"
#include "twinbeam/spdc.h"

using namespace twinbeam;

namespace {

constexpr double kAlpha = 1e5;
constexpr double kTheta = 0.01;

struct Check {
    bool ok = true;
    std::ostringstream notes;

    void expect(bool cond, const std::string &what) {
        if (!cond) {
            ok = false;
            notes << " [" << what << "]";
        }
    }
};

FockState family(double c) {
    double n = 1.0 / std::sqrt(2.0 + c * c);
    return FockState::from_terms({{{2, 0, 0, 2}, n}, {{0, 2, 2, 0}, n}, {{1, 1, 1, 1}, -c * n}});
}

double max_amplitude_diff(const FockState &a, const FockState &b) {
    double worst = 0;
    for (const auto &[occ, amp] : a.terms()) {
        worst = std::max(worst, std::abs(amp - b.amplitude(occ)));
    }
    for (const auto &[occ, amp] : b.terms()) {
        worst = std::max(worst, std::abs(amp - a.amplitude(occ)));
    }
    return worst;
}

void four_photon_split(Check &check) {
    double worst = 0;
    for (double c : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        double n = 1.0 / std::sqrt(4.0 * c * c + 8.0);
        auto expect = FockState::from_terms({
            {{2, 2, 0, 0}, (1 - c) * n},
            {{0, 0, 2, 2}, (1 - c) * n},
            {{2, 0, 0, 2}, (1 + c) * n},
            {{0, 2, 2, 0}, (1 + c) * n},
            {{1, 1, 1, 1}, -2 * n},
        });
        worst = std::max(worst, max_amplitude_diff(beam_splitter(family(c)), expect));
    }
    check.notes << "max amplitude error " << worst;
    check.expect(worst <= 1e-12, "amplitude error > 1e-12");
}

void detector_probabilities(Check &check) {
    double worst_p = 0, worst_c = 0;
    for (double c : {-0.5, 0.0, 0.5, 1.0, 2.0, 5.0}) {
        auto result = symmetry_detector(family(c), kAlpha, kTheta, Analytic{});
        const auto *sym = result.find(Symmetry::Symmetric);
        double p = 1.0 / (1.0 + (1.0 - c) * (1.0 - c) / (2.0 + (1.0 + c) * (1.0 + c)));
        worst_p = std::max(worst_p, std::abs(sym->probability - p));
        worst_c = std::max(worst_c, std::abs(sym->c_out.value_or(NAN) - 2.0 / (1.0 + c)));
    }
    check.notes << "max |P - formula| " << worst_p << ", max |c_out - 2/(1+c)| " << worst_c;
    check.expect(worst_p <= 1e-10, "probability error > 1e-10");
    check.expect(worst_c <= 1e-10, "c_out error > 1e-10");
}

void purification_cascade(Check &check) {
    auto closed = cascade_closed_form(2.0, 10);
    const double c_seq[] = {2.0 / 3, 6.0 / 5, 10.0 / 11, 22.0 / 21, 42.0 / 43};
    const double p_seq[] = {11.0 / 12, 43.0 / 44, 171.0 / 172};
    for (std::size_t i = 0; i < 5; i++) {
        check.expect(std::abs(closed[i].c - c_seq[i]) <= 1e-15, "c_" + std::to_string(i + 1) + " sequence");
    }
    for (std::size_t i = 0; i < 3; i++) {
        check.expect(std::abs(closed[i].p - p_seq[i]) <= 1e-15, "P_" + std::to_string(i + 1) + " sequence");
    }
    double dc = std::abs(closed[9].c - 1.0), dp = 1.0 - closed[9].p;
    check.notes << "|c_10 - 1| = " << dc << ", 1 - P_10 = " << dp;
    check.expect(dc < 1e-5, "|c_10 - 1| >= 1e-5");
    check.expect(dp < 1e-9, "1 - P_10 >= 1e-9");

    auto run = cascade_simulated(2.0, 10, kAlpha, kTheta, Analytic{});
    double worst = 0;
    for (std::size_t i = 0; i < closed.size(); i++) {
        worst = std::max({worst, std::abs(run.records[i].c - closed[i].c), std::abs(run.records[i].p - closed[i].p)});
    }
    check.notes << ", simulated vs closed form " << worst;
    check.expect(worst <= 1e-9, "simulation deviates > 1e-9");
}

void pair_invariance(Check &check) {
    double worst = 1;
    for (int n = 1; n <= 6; n++) {
        worst = std::min(worst, fidelity(beam_splitter(pair_state(n)), pair_state(n)));
    }
    check.notes << "min fidelity 1 - " << 1 - worst;
    check.expect(worst >= 1 - 1e-10, "fidelity < 1 - 1e-10");
}

void kerr_ladder(Check &check) {
    double worst = 0;
    for (int n = 1; n <= 6; n++) {
        auto h = cross_kerr(HybridState::product(beam_splitter(pair_state(n)), kAlpha), PhaseConfig::npair(kTheta));
        check.expect(h.size() == 1, "n=" + std::to_string(n) + " splits the probe");
        worst = std::max(worst, std::abs(std::arg(h.branches()[0].label) - (n - 1) * kTheta));
    }
    check.notes << "max phase error " << worst;
    check.expect(worst <= 1e-12, "phase error > 1e-12");
}

void homodyne(Check &check) {
    Complex label = std::polar(kAlpha, kTheta);
    double mean = quadrature_mean(label);
    double total =
        oracle::integrate([&](double x) { return std::norm(homodyne_kernel(x, label)); }, mean - 12, mean + 12);
    check.notes << "|norm - 1| = " << std::abs(total - 1);
    check.expect(std::abs(total - 1) <= 1e-6, "kernel norm off by > 1e-6");

    double r = 1.0 / std::sqrt(2.0);
    FockState bunched = FockState::from_terms({{{2, 2, 0, 0}, r}, {{0, 0, 2, 2}, r}});
    HybridState asym(kAlpha, {{std::polar(kAlpha, kTheta), FockState::from_terms({{{2, 2, 0, 0}, r}})},
                              {std::polar(kAlpha, -kTheta), FockState::from_terms({{{0, 0, 2, 2}, r}})}});
    auto windows = build_windows(kAlpha, kTheta, 2);
    Rng rng(2026);
    double worst = 1;
    for (int i = 0; i < 100; i++) {
        double x = sample_outcome(asym, rng);
        auto out = project(asym, x, windows, FeedForward{kTheta, 2});
        worst = std::min(worst, fidelity(out.post_state, bunched));
    }
    check.notes << ", min corrected fidelity over 100 x: 1 - F = " << 1 - worst;
    check.expect(worst >= 1 - 1e-9, "corrected fidelity < 1 - 1e-9");
}

void spdc_statistics(Check &check) {
    double worst_p = 0, worst_mean = 0;
    Rng rng(7);
    for (double tau : {0.1, 0.5, 1.0}) {
        auto d = pair_distribution({tau, 200});
        double mean = 0;
        for (int n = 0; n <= 200; n++) {
            double p = d.probabilities[static_cast<std::size_t>(n)];
            double expect = (n + 1) * std::pow(std::tanh(tau), 2 * n) / std::pow(std::cosh(tau), 4);
            worst_p = std::max(worst_p, std::abs(p - expect));
            mean += n * p;
        }
        double target = 2 * std::pow(std::sinh(tau), 2);
        worst_mean = std::max(worst_mean, std::abs(mean - target));

        const int shots = 100000;
        double sum = 0, sum2 = 0;
        int ones = 0;
        SpdcParams source{tau, adequate_truncation(tau)};
        for (int s = 0; s < shots; s++) {
            int n = sample_emission(source, rng);
            sum += n;
            sum2 += static_cast<double>(n) * n;
            ones += n == 1;
        }
        double m = sum / shots;
        double se = std::sqrt((sum2 / shots - m * m) / shots);
        double p1 = d.probabilities[1];
        check.expect(std::abs(m - target) <= 3 * se, "sampled mean outside 3 sigma at tau=" + std::to_string(tau));
        check.expect(std::abs(static_cast<double>(ones) / shots - p1) <= 3 * std::sqrt(p1 * (1 - p1) / shots),
                     "sampled p_1 outside 3 sigma at tau=" + std::to_string(tau));
    }
    check.notes << "max |p_n - formula| " << worst_p << ", max |<n> - 2 sinh^2| " << worst_mean;
    check.expect(worst_p <= 1e-12, "distribution error > 1e-12");
    check.expect(worst_mean <= 1e-8, "mean error > 1e-8");
}

void classifier(Check &check) {
    PairClassifier c(kAlpha, kTheta, 4);
    const int shots = 10000;
    const double limit = 1e-3 + 3 * std::sqrt(1e-3 * (1 - 1e-3) / shots);
    Rng rng(42);
    for (int m = 1; m <= 4; m++) {
        auto prepared = c.prepare(pair_state(m));
        std::vector<int> row(5, 0);
        for (int s = 0; s < shots; s++) {
            row[static_cast<std::size_t>(*c.sample(prepared, rng).declared)]++;
        }
        double err = 1.0 - static_cast<double>(row[static_cast<std::size_t>(m)]) / shots;
        check.notes << (m == 1 ? "" : ", ") << "m=" << m << " error " << err;
        check.expect(err < limit, "m=" + std::to_string(m) + " error above band");
    }
}

void dense_equivalence(Check &check) {
    oracle::DenseSpace space(6);
    oracle::DenseMatrix bs = space.beam_splitter_unitary();
    oracle::DenseMatrix n_a = space.number(Mode::AH) + space.number(Mode::AV);
    oracle::DenseMatrix n_b = space.number(Mode::BH) + space.number(Mode::BV);
    std::vector<std::pair<Mode, oracle::DenseMatrix>> shifts;
    for (Mode m : kAllModes) {
        shifts.emplace_back(m, space.phase_unitary(m, 0.41 + static_cast<int>(m)));
    }
    std::mt19937_64 rng(99);
    double worst = 0;
    for (int trial = 0; trial < 20; trial++) {
        auto s = space.random_state(rng, 25);
        oracle::DenseVector v = space.to_dense(s);
        oracle::DenseVector split = bs * v;
        worst = std::max(worst, (space.to_dense(beam_splitter(s)) - split).cwiseAbs().maxCoeff());
        for (const auto &[m, u] : shifts) {
            double phi = 0.41 + static_cast<int>(m);
            oracle::DenseVector shifted = u * v;
            worst = std::max(worst, (space.to_dense(phase_shift(s, m, phi)) - shifted).cwiseAbs().maxCoeff());
        }
        for (const auto &cfg : {PhaseConfig::fig1(0.03), PhaseConfig::npair(0.03)}) {
            auto h = cross_kerr(HybridState::product(s, 1.5), cfg);
            for (std::size_t i = 0; i < space.dim(); i++) {
                auto idx = static_cast<Eigen::Index>(i);
                if (v(idx) == Complex(0.0)) {
                    continue;
                }
                double phase = cfg.rate_a * n_a(idx, idx).real() + cfg.rate_b * n_b(idx, idx).real() + cfg.probe_gate;
                Complex label = std::polar(1.5, phase);
                for (const auto &b : h.branches()) {
                    Complex amp = b.signal.amplitude(space.basis()[i]);
                    if (amp != Complex(0.0)) {
                        worst = std::max({worst, std::abs(b.label - label), std::abs(amp - v(idx))});
                    }
                }
            }
        }
    }
    check.notes << "max deviation " << worst << " on " << space.dim() << "-dim space";
    check.expect(worst <= 1e-12, "deviation > 1e-12");
}

struct Criterion {
    int id;
    const char *title;
    double budget_seconds;  // 0: no runtime bound
    std::function<void(Check &)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "four-photon beam splitter expansion", 1, four_photon_split},
        {2, "symmetry detector probability and c_out", 1, detector_probabilities},
        {3, "purification cascade from c0 = 2", 10, purification_cascade},
        {4, "pair-state beam splitter invariance", 5, pair_invariance},
        {5, "n-pair Kerr phase ladder", 0, kerr_ladder},
        {6, "homodyne kernel norm and feed-forward", 0, homodyne},
        {7, "SPDC pair statistics", 0, spdc_statistics},
        {8, "pair-number classifier at defaults", 0, classifier},
        {9, "sparse vs dense operator equivalence", 0, dense_equivalence},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            c.body(check);
        } catch (const std::exception &e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0) {
            check.expect(seconds < c.budget_seconds, "runtime over " + std::to_string(c.budget_seconds) + " s");
        }
        failed += check.ok ? 0 : 1;
        std::printf("%s [%d] %s (%.3f s): %s\n", check.ok ? "PASS" : "FAIL", c.id, c.title, seconds,
                    check.notes.str().c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
