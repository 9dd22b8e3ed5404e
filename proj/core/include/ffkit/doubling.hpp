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

#include <optional>
#include <vector>

#include "ffkit/bdg.hpp"
#include "ffkit/hamiltonians.hpp"
#include "ffkit/invariants.hpp"
#include "ffkit/lattice.hpp"
#include "ffkit/spectral.hpp"

namespace ffkit {

/// Two copies of a gapped system: H on the up copy and its time-reversed
/// partner on the down copy, coupled along the interpolation family
///
///   C_s = [[ sqrt(1-s^2) A,  s dE 1          ],
///          [ s dE 1,        -sqrt(1-s^2) A   ]]
///
/// written in the doubled Nambu basis (Psi_up, Psi_up^dag, -Psi_dn^dag, Psi_dn).
/// The sign on Psi_dn^dag makes the identity coupling a genuine pairing term:
/// in the ordinary ordering the symmetric off-diagonal block cancels against
/// fermion antisymmetry. In operator form the family reads
///
///   H_s = sqrt(1-s^2) (H_up + H~_dn) - s dE sum_i (Psi_{i,up}^dag Psi_{i,dn}^dag + h.c.)
///
/// with H~ = H* after the single-copy gauge Psi_dn -> i Psi_dn (pairing -Delta*),
/// and its s = 1 ground state is prod_i (1 + Psi_{i,up}^dag Psi_{i,dn}^dag)/sqrt(2) |0>.
class DoubledSystem {
  public:
    explicit DoubledSystem(QuadraticHamiltonian base);

    const QuadraticHamiltonian &base() const noexcept { return base_; }
    const Lattice &lattice() const noexcept { return base_.lattice(); }
    const BdGMatrix &bdg() const noexcept { return bdg_; }
    const HermitianSpectrum &base_spectrum() const noexcept { return spectrum_; }
    /// Single-particle gap of the base BdG matrix; also the coupling scale.
    double delta_e() const noexcept { return delta_e_; }
    int sites() const noexcept { return base_.sites(); }
    /// The down-copy Hamiltonian in the ordinary Dirac basis of that copy.
    QuadraticHamiltonian partner() const;

  private:
    QuadraticHamiltonian base_;
    BdGMatrix bdg_;
    HermitianSpectrum spectrum_;
    double delta_e_ = 0.0;
};

struct InterpolationPath {
    InterpolationPath(DoubledSystem system, std::vector<double> grid);

    DoubledSystem system;
    std::vector<double> grid;
};

/// `points` equally spaced values in [0, 1] (points >= 2).
InterpolationPath uniform_path(DoubledSystem system, int points);

BdGMatrix path_matrix(const DoubledSystem &sys, double s);

/// C as a function of the angle theta = asin(s), where the family is smooth:
/// C(theta) = cos(theta) (A (+) -A) + sin(theta) dE X.
CMatrix path_matrix_angle(const DoubledSystem &sys, double theta);
CMatrix path_tangent_angle(const DoubledSystem &sys, double theta);

/// Eigenvalues {+/- sqrt((1-s^2) lambda^2 + s^2 dE^2)} predicted from the base spectrum, ascending.
RVector predicted_path_spectrum(const DoubledSystem &sys, double s);

/// Negative-energy spectral projector of C_s assembled from the base
/// eigenvectors: each eigenpair (lambda, u) of A spans a 2x2 block of C_s.
CMatrix path_negative_projector(const DoubledSystem &sys, double s);
/// Rows/columns `indices` of the same projector.
CMatrix path_negative_projector(const DoubledSystem &sys, double s, const std::vector<int> &indices);

/// Ground covariance of H_s on the 2V-site doubled lattice (up sites first).
MajoranaCovariance path_ground_covariance(const DoubledSystem &sys, double s);

/// Exact covariance of prod_i (1 + Psi_{i,up}^dag Psi_{i,dn}^dag)/sqrt(2) |0>.
MajoranaCovariance product_ground_state_covariance(int sites);

/// max |tau_x M^* tau_x + M| in the Dirac basis; zero for any matrix that is
/// the BdG matrix of a fermion quadratic form.
double particle_hole_residual(const BdGMatrix &a);

struct GapRecord {
    double s = 0.0;
    double gap = 0.0;
    double deviation = 0.0;
};

struct GapReport {
    double delta_e = 0.0;
    std::vector<GapRecord> records;
    double max_deviation = 0.0;
    bool pass = false;
};

/// Direct eigensolve of C_s at every grid point; passes iff every
/// |gap - dE| < 1e-9 dE.
/// Relative gate on |gap(C_s) - dE| / dE.
inline constexpr double kGapInvarianceTolerance = 1e-9;

/// Gap of C_s from a direct eigensolve, compared with dE.
GapRecord gap_at(const DoubledSystem &sys, double s);
GapReport verify_gap_along_path(const InterpolationPath &path);

struct LocalityRecord {
    double s = 0.0;
    double expression = 0.0;
};

struct LocalityReport {
    double mu = 0.0;
    double s1 = 0.0;
    double delta_e = 0.0;
    std::vector<LocalityRecord> records;
    double max_expression = 0.0;
    bool pass = false;
};

/// Evaluates 2 (sqrt(1-s^2) max_i sum_j e^{mu d(i,j)} sqrt(|H_ij|^2 + |D_ij|^2) + s^2 dE)
/// on the grid; passes iff it never exceeds s1 + 1e-12. A sufficient
/// condition is dE <= s1/4.
LocalityReport verify_locality_along_path(const InterpolationPath &path, double mu);

inline constexpr double kChernCancellationTolerance = 0.05;

struct InvariantRecord {
    double s = 0.0;
    std::optional<int> majorana_number;
    std::optional<double> nu;
    double nu_imag_residual = 0.0;
};

struct InvariantScan {
    /// Invariant of the undoubled base system (control).
    InvariantRecord base;
    std::vector<InvariantRecord> records;
    bool cancelled = false;
};

/// Majorana number on 1D lattices, real-space Chern sum on 2D lattices; the
/// doubled value is computed at every grid point. Cancellation means +1 for
/// every Majorana number and |nu| < 0.05 for every Chern sum.
/// Invariant of the doubled ground state at one path parameter.
InvariantRecord invariant_at(const DoubledSystem &sys, double s);
InvariantRecord invariant_at(const DoubledSystem &sys, double s, const SectorPartition &partition);
/// Whether a doubled-path record shows the trivial value.
bool is_cancelled(const InvariantRecord &record);
InvariantScan invariant_scan(const InterpolationPath &path);
InvariantScan invariant_scan(const InterpolationPath &path, const SectorPartition &partition);

/// Invariant of the undoubled system.
InvariantRecord base_invariant(const QuadraticHamiltonian &h);
InvariantRecord base_invariant(const QuadraticHamiltonian &h, const SectorPartition &partition);

}  // namespace ffkit
