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
#include <span>
#include <vector>

#include "ffkit/lattice.hpp"
#include "ffkit/linalg.hpp"
#include "ffkit/spectral.hpp"

namespace ffkit {

/// Pfaffian of an even-dimensional antisymmetric matrix by skew-symmetric
/// Gaussian elimination with partial pivoting (Parlett-Reid), O(n^3).
double pfaffian(const RMatrix &s);
cplx pfaffian(const CMatrix &s);

/// B_odd: c_{2j-1} paired with c_{2j}, i.e. every site occupied.
MajoranaCovariance state_odd(int sites);
/// B_even(i, j) = B_odd(i + 1, j + 1) with indices taken mod 2V.
MajoranaCovariance state_even(int sites);

/// Purity gate for majorana_number.
inline constexpr double kMajoranaPurityTolerance = 1e-6;

/// sign Pf(B) in the global site ordering; +1 for the fully occupied state.
int majorana_number(const MajoranaCovariance &b);

/// Three disjoint sets of sites forming counterclockwise 120 degree sectors of a disc.
struct SectorPartition {
    std::array<std::vector<int>, 3> sectors;
    std::array<double, 2> center{};
    double radius = 0.0;
};

/// Disc of the given radius around `center`, split at angles 0, 2pi/3, 4pi/3.
/// A site sitting exactly on the center is left out.
SectorPartition disc_partition(const Lattice &lattice, double radius, std::array<double, 2> center);
/// Radius L/3 (L the smaller extent) centred on the middle of the lattice.
SectorPartition disc_partition(const Lattice &lattice);

void validate_partition(const SectorPartition &partition, int sites);

struct ChernResult {
    double value = 0.0;
    double imag_residual = 0.0;
};

/// nu(P) = 12 pi i sum_{j in A, k in B, l in C} (P_jk P_kl P_lj - P_jl P_lk P_kj)
/// applied to the spectral projector G = P^T of the occupied states.
ChernResult real_space_chern(const OccupiedProjector &p, const SectorPartition &partition);

/// Same sum for an arbitrary spectral projector whose row/column q lives on
/// lattice site `site_of_index[q]` (several indices may share a site, e.g.
/// Nambu or copy components). The caller guarantees projector-ness.
ChernResult real_space_chern(const CMatrix &projector, std::span<const int> site_of_index,
                             const SectorPartition &partition);

}  // namespace ffkit
