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

#ifndef TWINBEAM_FOCK_STATE_H
#define TWINBEAM_FOCK_STATE_H

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>

namespace twinbeam {

using Complex = std::complex<double>;

/// The four signal modes: spatial mode a or b, horizontal or vertical polarization.
/// The coherent probe is not a signal mode.
enum class Mode : std::uint8_t { AH = 0, AV = 1, BH = 2, BV = 3 };

inline constexpr std::array<Mode, 4> kAllModes{Mode::AH, Mode::AV, Mode::BH, Mode::BV};

const char *mode_name(Mode m);

/// Photon counts |m,n;r,s> in the order (a_H, a_V, b_H, b_V).
struct Occupation {
    std::array<std::uint32_t, 4> counts{};

    constexpr Occupation() = default;
    constexpr Occupation(std::uint32_t ah, std::uint32_t av, std::uint32_t bh, std::uint32_t bv)
        : counts{ah, av, bh, bv} {}

    constexpr std::uint32_t operator[](Mode m) const { return counts[static_cast<std::size_t>(m)]; }
    constexpr std::uint32_t &operator[](Mode m) { return counts[static_cast<std::size_t>(m)]; }

    constexpr std::uint32_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
    /// Photons in spatial mode a (both polarizations).
    constexpr std::uint32_t spatial_a() const { return counts[0] + counts[1]; }
    /// Photons in spatial mode b (both polarizations).
    constexpr std::uint32_t spatial_b() const { return counts[2] + counts[3]; }

    auto operator<=>(const Occupation &) const = default;

    std::string str() const;
};

inline constexpr double kPruneThreshold = 1e-14;
inline constexpr double kNormTolerance = 1e-10;

/// A pure state of the four signal modes, stored as a sparse map from
/// occupations to amplitudes. Values are immutable once built; every
/// operation returns a new state.
class FockState {
   public:
    using Terms = std::map<Occupation, Complex>;
    using Term = std::pair<Occupation, Complex>;

    /// The zero vector (not the vacuum).
    FockState() = default;

    /// Sums duplicate occupations, then drops amplitudes with magnitude below `prune`.
    static FockState from_terms(std::span<const Term> terms, double prune = kPruneThreshold);
    static FockState from_terms(std::initializer_list<Term> terms, double prune = kPruneThreshold);
    /// Adopts an already-accumulated map, pruning small amplitudes.
    static FockState from_map(Terms terms, double prune = kPruneThreshold);

    static FockState vacuum();
    static FockState basis(const Occupation &occ);

    const Terms &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    Complex amplitude(const Occupation &occ) const;
    double norm2() const;
    double norm() const;
    bool is_normalized(double tol = kNormTolerance) const;

    FockState scaled(Complex factor) const;

    /// Component-wise sum, useful for building superpositions.
    friend FockState operator+(const FockState &lhs, const FockState &rhs);
    friend bool operator==(const FockState &, const FockState &) = default;

    std::string str() const;

   private:
    explicit FockState(Terms terms) : terms_(std::move(terms)) {}

    Terms terms_;
};

FockState make_state(std::span<const FockState::Term> terms);

/// Throws ZeroState when the state has zero norm.
FockState normalize(const FockState &s);

/// <s1|s2>, conjugate-linear in the first argument.
Complex inner_product(const FockState &s1, const FockState &s2);

FockState apply_creation(const FockState &s, Mode m);
FockState apply_annihilation(const FockState &s, Mode m);

/// |<s1|s2>|^2. Both states must be normalized (NotNormalized otherwise).
double fidelity(const FockState &s1, const FockState &s2);

}  // namespace twinbeam

#endif
