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
#include <optional>
#include <vector>

#include "ffkit/fit.hpp"
#include "ffkit/hamiltonians.hpp"
#include "ffkit/linalg.hpp"
#include "ffkit/spectral.hpp"

namespace ffkit {

/// Largest subset whose density matrix is built densely (2^12 x 2^12).
inline constexpr int kMaxReducedSites = 12;

/// 2|Y| x 2|Y| block of B on the Majorana operators of the sites in Y, in the order given.
RMatrix restrict_covariance(const MajoranaCovariance &b, const std::vector<int> &subset);

/// Nonnegative nu_k with B = O (+)_k nu_k J O^T, J = [[0, 1], [-1, 0]].
RVector williamson_values(const RMatrix &b);

/// Density matrix of the Gaussian state with covariance b on |Y| modes,
/// basis states |n_0 n_1 ...> indexed by sum n_k 2^k. Values within 1e-8
/// outside [-1, 1] are clamped; larger violations are rejected.
CMatrix rdm_from_covariance(const RMatrix &b);

/// B_jk = i tr(rho c_j c_k) for j != k: the inverse of rdm_from_covariance.
RMatrix covariance_from_rdm(const CMatrix &rho);

/// Majorana operators on `modes` fermions as dense matrices (tests and small systems only).
CMatrix majorana_matrix(int modes, int index);

struct GaussianReducedState {
    std::vector<int> subset;
    RMatrix covariance;
    CMatrix rho;
};

GaussianReducedState reduced_state(const MajoranaCovariance &b, const std::vector<int> &subset);

/// tr |rho - sigma|
double trace_norm_distance(const CMatrix &rho, const CMatrix &sigma);

struct BoundaryOptions {
    /// Decay rate used for s1 and the Lieb-Robinson velocity.
    double mu = 0.6931471805599453;
    /// Quasi-adiabatic length; measured from the flow generator when absent.
    std::optional<double> xi_prime;
    /// Distances at or below this value are treated as zero and left out of the fit.
    double floor = 1e-12;
};

struct BoundaryRecord {
    int margin = 0;
    double distance = 0.0;
    /// const |Y| sqrt(l / (v dE)) s1 exp(-l / xi') xi'^d with the fitted const.
    double envelope = 0.0;
};

struct BoundaryExperiment {
    std::vector<int> subset;
    std::vector<BoundaryRecord> records;
    std::optional<LinearFit> fit;
    double fitted_constant = 0.0;
    double xi_prime = 0.0;
    double s1 = 0.0;
    double v = 0.0;
    double delta_e = 0.0;
    /// Negative log-slope with r^2 > 0.9, or every distance below the floor.
    bool decays = false;
};

/// Builds the system compared against `base` at a given margin.
using PerturbationFamily = std::function<QuadraticHamiltonian(int margin)>;

/// Trace distance between the reduced states of `base` and `perturbed` on Y
/// for each margin l. Each pair must agree on every coupling touching the
/// sites within distance l of Y; otherwise a configuration error is raised.
BoundaryExperiment boundary_sensitivity(const QuadraticHamiltonian &base, const QuadraticHamiltonian &perturbed,
                                        const std::vector<int> &subset, const std::vector<int> &margins,
                                        const BoundaryOptions &options = {});
BoundaryExperiment boundary_sensitivity(const QuadraticHamiltonian &base, const PerturbationFamily &perturbed,
                                        const std::vector<int> &subset, const std::vector<int> &margins,
                                        const BoundaryOptions &options = {});

/// For margin l, multiplies by `factor` every coupling between a site at
/// distance l + 1 from Y and one at distance l + 2: a weakened shell just
/// outside the protected region.
PerturbationFamily shell_defect(const QuadraticHamiltonian &base, const std::vector<int> &subset, double factor);

/// Throws a configuration error unless hop and pair agree exactly on every
/// entry with a row or column inside `region`.
void check_agreement(const QuadraticHamiltonian &a, const QuadraticHamiltonian &b, const std::vector<int> &region);

}  // namespace ffkit
