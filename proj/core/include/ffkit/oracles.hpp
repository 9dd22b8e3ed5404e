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

#include <functional>
#include <vector>

#include "ffkit/linalg.hpp"

/// Brute-force reference computations used to check the library. They share
/// no code with ffkit::core beyond the matrix aliases.
namespace ffkit::oracle {

/// Largest number of modes handled in Fock space (dimension 2^10).
inline constexpr int kMaxFockModes = 10;

/// Annihilation operator of `mode` on `modes` fermions. Basis state index
/// sum n_k 2^k, Jordan-Wigner strings over the lower modes.
CMatrix annihilator(int modes, int mode);

/// (1/2) Phi^dag A Phi for a Dirac-basis BdG matrix A, Phi = (Psi, Psi^dag).
CMatrix fock_hamiltonian(const CMatrix &bdg);

struct FockGround {
    double energy = 0.0;
    double gap = 0.0;  ///< E_1 - E_0
    CVector state;
    int modes = 0;
};

FockGround fock_ground_state(const CMatrix &bdg);

/// B_jk = i <c_j c_k> (j != k) with c_{2j} = Psi_j + Psi_j^dag, c_{2j+1} = -i (Psi_j - Psi_j^dag).
RMatrix fock_covariance(const CVector &state, int modes);

/// <Psi_j^dag Psi_k> and <Psi_j^dag Psi_k^dag>.
CMatrix fock_normal_correlator(const CVector &state, int modes);
CMatrix fock_anomalous_correlator(const CVector &state, int modes);

/// Reduced density matrix on `subset` (local mode k = subset[k]) from the
/// expansion rho_Y = 2^-|Y| sum_S <c_S^dag> c_S over Majorana strings of Y.
CMatrix fock_reduced_density_matrix(const CVector &state, int modes, const std::vector<int> &subset);

/// Pfaffian as the signed sum over perfect matchings (n <= 12).
double matching_pfaffian(const RMatrix &s);

/// Bloch Hamiltonian of a two-band model at momentum (kx, ky).
using BlochHamiltonian = std::function<CMatrix(double kx, double ky)>;

/// Lattice-gauge (link-variable) Chern number of the lowest `occupied` bands
/// on an n x n momentum grid.
double fukui_chern(const BlochHamiltonian &h, int occupied, int n);

/// h(k) = t (sin kx sx + sin ky sy) + (m + t cos kx + t cos ky) sz
BlochHamiltonian two_band_chern_bloch(double mass, double hopping);

/// Two modes (up = mode 0, down = mode 1) in (1 + Psi_up^dag Psi_dn^dag)/sqrt(2) |0>.
struct TwoModeProduct {
    double n_up = 0.0;
    double n_down = 0.0;
    cplx pair = 0.0;  ///< <Psi_up^dag Psi_dn^dag>
    RMatrix covariance;
};

TwoModeProduct two_mode_product_state();

/// The two-mode covariance repeated over `sites` pairs (i, V + i).
RMatrix product_state_covariance(int sites);

}  // namespace ffkit::oracle
