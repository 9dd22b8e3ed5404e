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

#include <cstdint>
#include <limits>

#include "ffkit/bdg.hpp"
#include "ffkit/lattice.hpp"
#include "ffkit/linalg.hpp"

namespace ffkit {

/// Relative tolerance used when validating Hermiticity / antisymmetry of inputs.
inline constexpr double kInputTolerance = 1e-10;

/// Free-fermion lattice Hamiltonian with hopping matrix `hop` (Hermitian) and
/// pairing matrix `pair` (antisymmetric). The many-body operator it stands for
/// is (1/2) Phi^dag A Phi with A = assemble_bdg(*this), i.e.
///   sum_ij hop_ij Psi_i^dag Psi_j + (1/2) sum_ij pair_ij Psi_i^dag Psi_j^dag + h.c.
/// up to a constant.
class QuadraticHamiltonian {
  public:
    QuadraticHamiltonian(Lattice lattice, CMatrix hop, CMatrix pair);

    const Lattice &lattice() const noexcept { return lattice_; }
    const CMatrix &hop() const noexcept { return hop_; }
    const CMatrix &pair() const noexcept { return pair_; }
    int sites() const noexcept { return lattice_.size(); }
    bool number_conserving() const noexcept { return pair_.isZero(0.0); }

  private:
    Lattice lattice_;
    CMatrix hop_;
    CMatrix pair_;
};

BdGMatrix assemble_bdg(const QuadraticHamiltonian &h);

/// max_i 2 sum_j exp[mu dist(i,j)] sqrt(|hop_ij|^2 + |pair_ij|^2)
double locality_norm(const QuadraticHamiltonian &h, double mu);

struct LocalityProfile {
    double mu = 0.0;
    double s1 = 0.0;
    /// Lieb-Robinson velocity estimate, fixed as 2 s1 / mu.
    double v = 0.0;
    /// Prefactor of the Lieb-Robinson bound. Not determined; NaN marks "unknown O(1)".
    double c = std::numeric_limits<double>::quiet_NaN();
};

LocalityProfile locality_profile(const QuadraticHamiltonian &h, double mu);

/// xi = 2 v / gap + mu. A reporting scale only.
double correlation_length(const LocalityProfile &profile, double gap);

struct KitaevParams {
    double t = 1.0;
    double delta = 1.0;
    double mu_chem = 0.0;
    /// Width W of uniform on-site disorder in [-W/2, W/2]; zero disables it.
    double disorder = 0.0;
    std::uint64_t seed = 0;
};

QuadraticHamiltonian kitaev_chain(int sites, const KitaevParams &params, bool periodic);

struct PwaveParams {
    double t = 1.0;
    double delta = 1.0;
    double mu_chem = 0.0;
};

/// Spinless p+ip superconductor on a square lattice: pairing delta on x bonds
/// and i*delta on y bonds.
QuadraticHamiltonian pplusip_model(int lx, int ly, const PwaveParams &params, bool periodic);

struct ChernParams {
    double mass = 1.0;
    double hopping = 1.0;
};

/// Two-band insulator with Bloch Hamiltonian
///   h(k) = t (sin kx sx + sin ky sy) + (m + t cos kx + t cos ky) sz
/// on a square lattice with two orbitals per cell. The lower band carries a
/// Chern number of magnitude one for 0 < |m| < 2t and zero for |m| > 2t.
QuadraticHamiltonian chern_insulator_model(int lx, int ly, const ChernParams &params, bool periodic);

struct DimerParams {
    double t1 = 1.0;
    double t2 = 0.5;
    double stagger = 0.3;
    double disorder = 0.0;
    std::uint64_t seed = 0;
};

/// Rice-Mele chain: alternating bonds -t1 (even i) / -t2 (odd i) between i and
/// i+1 and a staggered potential +/-stagger. Insulating at half filling.
QuadraticHamiltonian dimerized_chain(int sites, const DimerParams &params, bool periodic);

/// Uncoupled sites, every site at energy -gap (fully occupied ground state).
QuadraticHamiltonian trivial_model(int sites, double gap);
QuadraticHamiltonian trivial_model(const Lattice &lattice, double gap);

/// Entrywise complex conjugate of hop and pair.
QuadraticHamiltonian conjugate_hamiltonian(const QuadraticHamiltonian &h);

}  // namespace ffkit
