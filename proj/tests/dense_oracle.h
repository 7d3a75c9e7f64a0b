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

// Brute-force dense-matrix reference used only by the tests. Everything here
// is built from ladder-operator matrices on the truncated four-mode space and
// shares no code with the sparse implementation.

#ifndef TWINBEAM_TESTS_DENSE_ORACLE_H
#define TWINBEAM_TESTS_DENSE_ORACLE_H

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "twinbeam/fock_state.h"

namespace twinbeam::oracle {

using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

class DenseSpace {
   public:
    explicit DenseSpace(std::uint32_t max_photons) : max_photons_(max_photons) {
        for (std::uint32_t a = 0; a <= max_photons; a++) {
            for (std::uint32_t b = 0; a + b <= max_photons; b++) {
                for (std::uint32_t c = 0; a + b + c <= max_photons; c++) {
                    for (std::uint32_t d = 0; a + b + c + d <= max_photons; d++) {
                        index_[Occupation{a, b, c, d}] = basis_.size();
                        basis_.push_back(Occupation{a, b, c, d});
                    }
                }
            }
        }
    }

    std::size_t dim() const { return basis_.size(); }
    const std::vector<Occupation> &basis() const { return basis_; }
    std::uint32_t max_photons() const { return max_photons_; }

    DenseVector to_dense(const FockState &s) const {
        DenseVector v = DenseVector::Zero(static_cast<Eigen::Index>(dim()));
        for (const auto &[occ, amp] : s.terms()) {
            v(static_cast<Eigen::Index>(index_.at(occ))) = amp;
        }
        return v;
    }

    /// Truncated creation operator: states at the photon cap are sent to zero.
    DenseMatrix creation(Mode m) const {
        DenseMatrix op = DenseMatrix::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
        for (std::size_t col = 0; col < dim(); col++) {
            Occupation occ = basis_[col];
            if (occ.total() == max_photons_) {
                continue;
            }
            double factor = std::sqrt(occ[m] + 1.0);
            occ[m] += 1;
            op(static_cast<Eigen::Index>(index_.at(occ)), static_cast<Eigen::Index>(col)) = factor;
        }
        return op;
    }

    DenseMatrix annihilation(Mode m) const { return creation(m).adjoint(); }

    /// exp(-pi/4 sum_pol (a^dag b - a b^dag)), i.e. exp(-i H) with H = -i pi (a^dag b - a b^dag)/4.
    DenseMatrix beam_splitter_unitary() const {
        // a b^dag is written as b^dag a so the photon cap never truncates an intermediate state.
        DenseMatrix gen = creation(Mode::AH) * annihilation(Mode::BH) - creation(Mode::BH) * annihilation(Mode::AH) +
                          creation(Mode::AV) * annihilation(Mode::BV) - creation(Mode::BV) * annihilation(Mode::AV);
        DenseMatrix scaled = (-M_PI / 4.0) * gen;
        return scaled.exp();
    }

    DenseMatrix number(Mode m) const { return creation(m) * annihilation(m); }

    DenseMatrix phase_unitary(Mode m, double phi) const {
        DenseMatrix n = number(m);
        DenseMatrix scaled = Complex{0.0, phi} * n;
        return scaled.exp();
    }

    /// Random normalized state supported on total photon number <= max_photons.
    FockState random_state(std::mt19937_64 &rng, std::size_t terms) const {
        std::uniform_int_distribution<std::size_t> pick(0, dim() - 1);
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<FockState::Term> t;
        for (std::size_t i = 0; i < terms; i++) {
            t.push_back({basis_[pick(rng)], Complex{g(rng), g(rng)}});
        }
        return normalize(FockState::from_terms(t));
    }

   private:
    std::uint32_t max_photons_;
    std::vector<Occupation> basis_;
    std::map<Occupation, std::size_t> index_;
};

}  // namespace twinbeam::oracle

#endif
