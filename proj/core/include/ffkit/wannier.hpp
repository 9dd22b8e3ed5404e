// Copyright 2026 The ffkit Authors
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

#pragma once

#include <array>
#include <vector>

#include "ffkit/lattice.hpp"
#include "ffkit/linalg.hpp"
#include "ffkit/spectral.hpp"

namespace ffkit {

enum class Axis { x = 0, y = 1 };

/// Diagonal operator of site coordinates along one axis, in lattice units.
struct PositionOperator {
    Axis axis = Axis::x;
    RVector diagonal;

    CMatrix dense() const { return diagonal.cast<cplx>().asDiagonal(); }
};

PositionOperator position_operator(const Lattice &lattice, Axis axis);

struct LocalizationFit {
    double length = 0.0;
    double r2 = 1.0;
    int bins = 0;
    /// Support in a single distance bin: the length is reported as zero.
    bool degenerate = false;
};

/// Fits log(max |psi| in each unit distance bin) against the bin index
/// |x - center| over sites with |psi| > 1e-12.
LocalizationFit localization_length(const CVector &psi, std::array<double, 2> center, const Lattice &lattice);

struct WannierBasis {
    CMatrix functions;  ///< columns
    RVector centers;
    std::vector<LocalizationFit> localization;

    int size() const noexcept { return static_cast<int>(functions.cols()); }
    double max_length() const;
};

/// Eigenvectors of GXG within the occupied space of a 1D open chain, G the
/// single-particle projector of `p`. Degenerate centers keep whatever
/// orthonormal basis the eigensolver returns.
WannierBasis gxg_wannier_1d(const OccupiedProjector &p, const PositionOperator &x, const Lattice &lattice);

/// ||sum_n |phi_n><phi_n| - G||, max entry.
double reconstruction_residual(const WannierBasis &w, const OccupiedProjector &p);

struct CommutatorReport {
    double commutator_norm = 0.0;
    double gxg_norm = 0.0;
    double gyg_norm = 0.0;
    double ratio = 0.0;
};

/// Spectral norms of [GXG, GYG], GXG and GYG for a projector G.
CommutatorReport almost_commuting_report(const CMatrix &g, const PositionOperator &x, const PositionOperator &y);
/// Same for the ground state of a number-conserving 2D Hamiltonian.
CommutatorReport almost_commuting_report(const QuadraticHamiltonian &h);

}  // namespace ffkit
