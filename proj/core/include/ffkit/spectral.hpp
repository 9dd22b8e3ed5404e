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

#include "ffkit/bdg.hpp"
#include "ffkit/hamiltonians.hpp"
#include "ffkit/linalg.hpp"

namespace ffkit {

struct HermitianSpectrum {
    RVector values;   ///< ascending
    CMatrix vectors;  ///< columns are orthonormal eigenvectors
};

/// Dense Hermitian eigendecomposition. Rejects inputs that are not Hermitian
/// to 1e-10 relative to their largest entry.
HermitianSpectrum hermitian_spectrum(const CMatrix &m);

/// Eigendecomposition of a BdG matrix. Number-conserving Dirac-basis matrices
/// (zero pairing blocks) are solved block by block.
HermitianSpectrum bdg_spectrum(const BdGMatrix &a);

double spectral_gap(const HermitianSpectrum &spectrum);
double spectral_gap(const BdGMatrix &a);

/// Default floor below which a spectrum counts as gapless: 1e-8 * ||A||.
double default_gap_floor(const HermitianSpectrum &spectrum);

CMatrix matrix_sign(const HermitianSpectrum &spectrum, double gap_floor);
CMatrix matrix_sign(const BdGMatrix &a, double gap_floor);
CMatrix matrix_sign(const BdGMatrix &a);

/// Unitary Omega with c = sqrt(2) Omega Phi, mapping the Dirac Nambu vector of
/// `modes` fermions onto Majorana operators.
CMatrix majorana_unitary(int modes);

BdGMatrix dirac_to_majorana(const BdGMatrix &a);

/// Signed permutation Pi with Theta = Pi Phi, where Theta is the doubled
/// Nambu vector and Phi the Dirac vector of the 2V-site doubled lattice
/// (up-copy sites first).
RMatrix doubled_permutation(int sites);

/// Re-express a doubled-basis matrix in the Dirac basis of the 2V-site system.
BdGMatrix doubled_to_dirac(const BdGMatrix &c);

/// Real antisymmetric 2V x 2V matrix B with <c_j c_k> = delta_jk - i B_jk.
class MajoranaCovariance {
  public:
    explicit MajoranaCovariance(RMatrix data);

    const RMatrix &data() const noexcept { return data_; }
    int size() const noexcept { return static_cast<int>(data_.rows()); }
    int modes() const noexcept { return size() / 2; }
    /// max |B^2 + 1|
    double purity_residual() const;

  private:
    RMatrix data_;
};

/// Ground-state covariance B = i sgn(A_M) of a gapped BdG matrix, where A_M is
/// the Majorana-basis matrix. With the ordering of `Basis::majorana` this
/// reproduces <c_j c_k> = delta_jk - i B_jk of the exact ground state.
MajoranaCovariance ground_covariance(const BdGMatrix &a);
MajoranaCovariance ground_covariance(const BdGMatrix &a, double gap_floor);
MajoranaCovariance ground_covariance(const QuadraticHamiltonian &h);

/// Covariance of the state whose Dirac-basis spectral sign matrix is `sign`.
MajoranaCovariance covariance_from_sign(const CMatrix &dirac_sign);

/// <Psi_j^dag Psi_j> for each site.
RVector site_occupations(const MajoranaCovariance &b);

struct DiracCorrelations {
    CMatrix normal;     ///< <Psi_j^dag Psi_k>
    CMatrix anomalous;  ///< <Psi_j^dag Psi_k^dag>
};

DiracCorrelations dirac_correlations(const MajoranaCovariance &b);

/// Ground-state correlator P_jk = <Psi_j^dag Psi_k> of a number-conserving
/// Hamiltonian. Equals the transpose of the single-particle projector onto
/// negative-energy eigenvectors of hop.
class OccupiedProjector {
  public:
    explicit OccupiedProjector(CMatrix correlator);

    const CMatrix &data() const noexcept { return data_; }
    /// Spectral projector G = sum_occ |u><u| = P^T.
    CMatrix single_particle() const { return data_.transpose(); }
    int size() const noexcept { return static_cast<int>(data_.rows()); }
    double trace() const { return data_.trace().real(); }
    double idempotency_residual() const;

  private:
    CMatrix data_;
};

OccupiedProjector occupied_projector(const QuadraticHamiltonian &h);
OccupiedProjector occupied_projector(const QuadraticHamiltonian &h, double gap_floor);

/// Projector onto eigenvectors with negative eigenvalue.
CMatrix negative_projector(const HermitianSpectrum &spectrum, double gap_floor);

}  // namespace ffkit
