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

#include "twinbeam/probe_homodyne.h"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "twinbeam/errors.h"
#include "twinbeam/optics.h"

namespace twinbeam {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = boost::math::constants::pi<double>();
// Branches further apart than this (in quadrature standard deviations) are
// sampled as if orthogonal.
constexpr double kClusterSeparation = 10.0;

double kernel_prefactor() {
    static const double value = std::pow(2.0 * kPi, -0.25);
    return value;
}

}  // namespace

double quadrature_window_mass(double mean, double lower, double upper) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    if (lower >= upper) {
        return 0;
    }
    if (lower >= mean) {
        return 0.5 * (std::erfc((lower - mean) * inv_sqrt2) - std::erfc((upper - mean) * inv_sqrt2));
    }
    if (upper <= mean) {
        return 0.5 * (std::erfc((mean - upper) * inv_sqrt2) - std::erfc((mean - lower) * inv_sqrt2));
    }
    return 1.0 - 0.5 * std::erfc((mean - lower) * inv_sqrt2) - 0.5 * std::erfc((upper - mean) * inv_sqrt2);
}

namespace {

FockState::Terms weighted_sum(const std::vector<const ProbeBranch *> &branches, double x, double shift) {
    FockState::Terms acc;
    for (const auto *b : branches) {
        Complex w = std::exp(homodyne_log_kernel(x, b->label) - shift);
        for (const auto &[occ, amp] : b->signal.terms()) {
            acc[occ] += w * amp;
        }
    }
    return acc;
}

double terms_norm2(const FockState::Terms &terms) {
    double total = 0;
    for (const auto &kv : terms) {
        total += std::norm(kv.second);
    }
    return total;
}

double cluster_pdf(const std::vector<const ProbeBranch *> &branches, double x) {
    double pre = kernel_prefactor();
    return pre * pre * terms_norm2(weighted_sum(branches, x, 0.0));
}

}  // namespace

bool labels_coincide(Complex lhs, Complex rhs) {
    double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return std::abs(lhs - rhs) <= kLabelMergeTolerance * scale;
}

HybridState::HybridState(double base_alpha, std::vector<ProbeBranch> branches) : base_alpha_(base_alpha) {
    for (auto &b : branches) {
        if (b.signal.empty()) {
            continue;
        }
        auto it = std::find_if(branches_.begin(), branches_.end(),
                               [&](const ProbeBranch &m) { return labels_coincide(m.label, b.label); });
        if (it == branches_.end()) {
            branches_.push_back(std::move(b));
        } else {
            it->signal = it->signal + b.signal;
        }
    }
    std::erase_if(branches_, [](const ProbeBranch &b) { return b.signal.empty(); });
    std::stable_sort(branches_.begin(), branches_.end(), [](const ProbeBranch &l, const ProbeBranch &r) {
        double al = std::arg(l.label), ar = std::arg(r.label);
        if (al != ar) {
            return al < ar;
        }
        return std::abs(l.label) < std::abs(r.label);
    });
}

HybridState HybridState::product(const FockState &signal, double alpha) {
    return HybridState(alpha, {ProbeBranch{Complex{alpha, 0.0}, signal}});
}

double HybridState::joint_norm2() const {
    double total = 0;
    for (const auto &b : branches_) {
        total += b.signal.norm2();
    }
    return total;
}

bool HybridState::is_normalized(double tol) const {
    return std::abs(std::sqrt(joint_norm2()) - 1.0) <= tol;
}

Complex homodyne_log_kernel(double x, Complex label) {
    double d = x - 2.0 * label.real();
    return {-0.25 * d * d, label.imag() * d};
}

Complex homodyne_kernel(double x, Complex label) {
    return kernel_prefactor() * std::exp(homodyne_log_kernel(x, label));
}

Complex kernel_overlap(Complex lhs, Complex rhs) {
    double half_sep = lhs.real() - rhs.real();
    double dnu = rhs.imag() - lhs.imag();
    return std::exp(Complex{-0.5 * (dnu * dnu + half_sep * half_sep), half_sep * (lhs.imag() + rhs.imag())});
}

double outcome_pdf(const HybridState &h, double x) {
    std::vector<const ProbeBranch *> all;
    for (const auto &b : h.branches()) {
        all.push_back(&b);
    }
    return cluster_pdf(all, x);
}

double window_probability(const HybridState &h, double lower, double upper) {
    const auto &branches = h.branches();
    double total = 0;
    for (const auto &b : branches) {
        total += b.signal.norm2() * quadrature_window_mass(quadrature_mean(b.label), lower, upper);
    }
    double pre2 = kernel_prefactor() * kernel_prefactor();
    for (std::size_t i = 0; i < branches.size(); i++) {
        for (std::size_t j = i + 1; j < branches.size(); j++) {
            Complex g = inner_product(branches[i].signal, branches[j].signal);
            if (std::abs(g) == 0) {
                continue;
            }
            double mi = quadrature_mean(branches[i].label);
            double mj = quadrature_mean(branches[j].label);
            double center = 0.5 * (mi + mj);
            // The product of the two kernels decays like exp(-((x-center)^2 + (mi-mj)^2/4)/2).
            if (std::abs(mi - mj) > 80.0) {
                continue;
            }
            double lo = std::max(lower, center - 40.0);
            double hi = std::min(upper, center + 40.0);
            if (lo >= hi) {
                continue;
            }
            Complex li = branches[i].label, lj = branches[j].label;
            auto integrand = [&](double x) {
                Complex e = std::conj(homodyne_log_kernel(x, li)) + homodyne_log_kernel(x, lj);
                return (g * std::exp(e)).real();
            };
            double cross = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 20, 1e-13);
            total += 2.0 * pre2 * cross;
        }
    }
    return total;
}

WindowTable::WindowTable(std::vector<Window> windows) : windows_(std::move(windows)) {
    if (windows_.empty()) {
        throw InvalidGeometry("window table is empty");
    }
    if (windows_.front().upper != kInf || windows_.back().lower != -kInf) {
        throw InvalidGeometry("windows must cover the real line");
    }
    for (std::size_t i = 0; i < windows_.size(); i++) {
        if (!(windows_[i].lower < windows_[i].upper)) {
            throw InvalidGeometry("window boundaries must be strictly decreasing");
        }
        if (i + 1 < windows_.size()) {
            if (windows_[i].lower != windows_[i + 1].upper) {
                throw InvalidGeometry("windows must be contiguous");
            }
            if (windows_[i + 1].class_id <= windows_[i].class_id) {
                throw InvalidGeometry("class ids must increase as x decreases");
            }
        }
    }
}

int WindowTable::classify(double x) const {
    for (const auto &w : windows_) {
        if (x > w.lower && x <= w.upper) {
            return w.class_id;
        }
    }
    // Only reachable for NaN.
    throw std::invalid_argument("homodyne outcome is not a number");
}

const WindowTable::Window &WindowTable::window_for(int class_id) const {
    for (const auto &w : windows_) {
        if (w.class_id == class_id) {
            return w;
        }
    }
    throw std::out_of_range("no window for class " + std::to_string(class_id));
}

WindowTable build_windows(double alpha, double theta, int n_max) {
    if (!(alpha > 0)) {
        throw InvalidGeometry("alpha must be positive");
    }
    if (n_max < 1) {
        throw InvalidGeometry("n_max must be at least 1");
    }
    if (!(theta > 0) || !(theta * n_max < kPi / 2)) {
        throw InvalidGeometry("need 0 < theta * n_max < pi/2 for monotone window boundaries");
    }
    std::vector<WindowTable::Window> windows;
    double upper = kInf;
    for (int m = 1; m <= n_max; m++) {
        double lower = m == n_max ? -kInf : alpha * (std::cos(m * theta) + std::cos((m - 1) * theta));
        windows.push_back({m, lower, upper});
        upper = lower;
    }
    return WindowTable(std::move(windows));
}

double feed_forward_phase(double alpha, double theta, double x) {
    double phi = -alpha * std::sin(theta) * (x - 2.0 * alpha * std::cos(theta)) / 2.0;
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0) {
        phi += 2.0 * kPi;
    }
    return phi;
}

HomodyneOutcome project(const HybridState &h, double x, const WindowTable &windows,
                        const std::optional<FeedForward> &correction) {
    std::vector<const ProbeBranch *> all;
    double shift = -kInf;
    for (const auto &b : h.branches()) {
        all.push_back(&b);
        shift = std::max(shift, homodyne_log_kernel(x, b.label).real());
    }
    if (all.empty() || !std::isfinite(shift)) {
        throw ZeroDensity(x);
    }
    FockState conditional = FockState::from_map(weighted_sum(all, x, shift));
    if (conditional.empty()) {
        throw ZeroDensity(x);
    }
    HomodyneOutcome out{x, windows.classify(x), normalize(conditional), false};
    if (correction && out.declared_class == correction->target_class) {
        double phi = feed_forward_phase(h.base_alpha(), correction->theta, x);
        out.post_state = phase_shift(phase_shift(out.post_state, Mode::BH, -phi), Mode::BV, -phi);
        out.correction_applied = true;
    }
    return out;
}

double sample_outcome(const HybridState &h, Rng &rng) {
    const auto &branches = h.branches();
    if (branches.empty()) {
        throw ZeroDensity(0.0);
    }
    std::vector<std::size_t> order(branches.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        return quadrature_mean(branches[l].label) < quadrature_mean(branches[r].label);
    });

    std::vector<std::vector<const ProbeBranch *>> clusters;
    double last_mean = -kInf;
    for (auto i : order) {
        double mean = quadrature_mean(branches[i].label);
        if (clusters.empty() || mean - last_mean > kClusterSeparation) {
            clusters.emplace_back();
        }
        clusters.back().push_back(&branches[i]);
        last_mean = mean;
    }

    std::vector<double> masses;
    std::vector<bool> coherent;
    for (const auto &cluster : clusters) {
        double mass = 0;
        bool interferes = false;
        for (std::size_t i = 0; i < cluster.size(); i++) {
            mass += cluster[i]->signal.norm2();
            for (std::size_t j = i + 1; j < cluster.size(); j++) {
                Complex g = inner_product(cluster[i]->signal, cluster[j]->signal);
                if (std::abs(g) > 1e-12 * cluster[i]->signal.norm() * cluster[j]->signal.norm()) {
                    interferes = true;
                    mass += 2.0 * (g * kernel_overlap(cluster[i]->label, cluster[j]->label)).real();
                }
            }
        }
        masses.push_back(std::max(mass, 0.0));
        coherent.push_back(interferes);
    }

    std::discrete_distribution<std::size_t> pick_cluster(masses.begin(), masses.end());
    const auto &cluster = clusters[pick_cluster(rng)];
    std::vector<double> weights;
    for (const auto *b : cluster) {
        weights.push_back(b->signal.norm2());
    }
    std::discrete_distribution<std::size_t> pick_branch(weights.begin(), weights.end());
    std::normal_distribution<double> noise(0.0, 1.0);

    if (!coherent[&cluster - clusters.data()]) {
        return quadrature_mean(cluster[pick_branch(rng)]->label) + noise(rng);
    }

    // Rejection from the incoherent mixture: by Cauchy-Schwarz the coherent
    // density never exceeds cluster.size() times the mixture density.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double bound = static_cast<double>(cluster.size());
    for (;;) {
        double x = quadrature_mean(cluster[pick_branch(rng)]->label) + noise(rng);
        double mixture = 0;
        for (std::size_t i = 0; i < cluster.size(); i++) {
            double d = x - quadrature_mean(cluster[i]->label);
            mixture += weights[i] * std::exp(-0.5 * d * d);
        }
        mixture *= 1.0 / std::sqrt(2.0 * kPi);
        double target = cluster_pdf(cluster, x);
        if (unit(rng) * bound * mixture <= target || mixture == 0) {
            return x;
        }
    }
}

double sample_outcome(const HybridState &h, std::uint64_t seed) {
    Rng rng(seed);
    return sample_outcome(h, rng);
}

}  // namespace twinbeam
