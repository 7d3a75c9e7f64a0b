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

#include "twinbeam/fock_state.h"

#include <cmath>
#include <sstream>

#include "twinbeam/errors.h"

namespace twinbeam {

const char *mode_name(Mode m) {
    switch (m) {
        case Mode::AH:
            return "a_H";
        case Mode::AV:
            return "a_V";
        case Mode::BH:
            return "b_H";
        case Mode::BV:
            return "b_V";
    }
    return "?";
}

std::string Occupation::str() const {
    std::ostringstream out;
    out << '|' << counts[0] << ',' << counts[1] << ';' << counts[2] << ',' << counts[3] << '>';
    return out.str();
}

FockState FockState::from_map(Terms terms, double prune) {
    std::erase_if(terms, [prune](const auto &kv) { return std::abs(kv.second) < prune; });
    return FockState(std::move(terms));
}

FockState FockState::from_terms(std::span<const Term> terms, double prune) {
    Terms acc;
    for (const auto &[occ, amp] : terms) {
        acc[occ] += amp;
    }
    return from_map(std::move(acc), prune);
}

FockState FockState::from_terms(std::initializer_list<Term> terms, double prune) {
    return from_terms(std::span<const Term>(terms.begin(), terms.size()), prune);
}

FockState FockState::vacuum() {
    return basis(Occupation{});
}

FockState FockState::basis(const Occupation &occ) {
    return FockState(Terms{{occ, Complex{1.0, 0.0}}});
}

Complex FockState::amplitude(const Occupation &occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? Complex{} : it->second;
}

double FockState::norm2() const {
    double total = 0;
    for (const auto &[occ, amp] : terms_) {
        total += std::norm(amp);
    }
    return total;
}

double FockState::norm() const {
    return std::sqrt(norm2());
}

bool FockState::is_normalized(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

FockState FockState::scaled(Complex factor) const {
    Terms out;
    for (const auto &[occ, amp] : terms_) {
        out.emplace_hint(out.end(), occ, amp * factor);
    }
    return from_map(std::move(out));
}

FockState operator+(const FockState &lhs, const FockState &rhs) {
    FockState::Terms out = lhs.terms_;
    for (const auto &[occ, amp] : rhs.terms_) {
        out[occ] += amp;
    }
    return FockState::from_map(std::move(out));
}

std::string FockState::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto &[occ, amp] : terms_) {
        if (!first) {
            out << " + ";
        }
        first = false;
        out << '(' << amp.real() << (amp.imag() < 0 ? "" : "+") << amp.imag() << "i)" << occ.str();
    }
    return out.str();
}

FockState make_state(std::span<const FockState::Term> terms) {
    return FockState::from_terms(terms);
}

FockState normalize(const FockState &s) {
    double n = s.norm();
    if (n == 0) {
        throw ZeroState();
    }
    return s.scaled(1.0 / n);
}

Complex inner_product(const FockState &s1, const FockState &s2) {
    const auto &small = s1.size() <= s2.size() ? s1 : s2;
    const auto &large = s1.size() <= s2.size() ? s2 : s1;
    Complex total{};
    for (const auto &[occ, amp] : small.terms()) {
        auto it = large.terms().find(occ);
        if (it != large.terms().end()) {
            total += &small == &s1 ? std::conj(amp) * it->second : std::conj(it->second) * amp;
        }
    }
    return total;
}

FockState apply_creation(const FockState &s, Mode m) {
    FockState::Terms out;
    for (const auto &[key, amp] : s.terms()) {
        Occupation occ = key;
        double factor = std::sqrt(static_cast<double>(occ[m]) + 1.0);
        occ[m] += 1;
        out.emplace(occ, amp * factor);
    }
    return FockState::from_map(std::move(out));
}

FockState apply_annihilation(const FockState &s, Mode m) {
    FockState::Terms out;
    for (const auto &[key, amp] : s.terms()) {
        Occupation occ = key;
        if (occ[m] == 0) {
            continue;
        }
        double factor = std::sqrt(static_cast<double>(occ[m]));
        occ[m] -= 1;
        out.emplace(occ, amp * factor);
    }
    return FockState::from_map(std::move(out));
}

double fidelity(const FockState &s1, const FockState &s2) {
    if (!s1.is_normalized()) {
        throw NotNormalized(s1.norm());
    }
    if (!s2.is_normalized()) {
        throw NotNormalized(s2.norm());
    }
    return std::min(1.0, std::norm(inner_product(s1, s2)));
}

}  // namespace twinbeam
