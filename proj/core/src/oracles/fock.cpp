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

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Sparse>

#include "ffkit/oracles.hpp"

namespace ffkit::oracle {

namespace {

using Sparse = Eigen::SparseMatrix<cplx>;

void check_modes(int modes) {
    if (modes < 1 || modes > kMaxFockModes)
        throw std::invalid_argument("Fock oracle supports 1.." + std::to_string(kMaxFockModes) + " modes");
}

Sparse sparse_annihilator(int modes, int mode) {
    const std::uint32_t dim = 1u << modes;
    const std::uint32_t bit = 1u << mode;
    std::vector<Eigen::Triplet<cplx>> t;
    for (std::uint32_t s = 0; s < dim; ++s) {
        if (!(s & bit)) continue;
        double sign = std::popcount(s & (bit - 1)) % 2 == 0 ? 1.0 : -1.0;
        t.emplace_back(static_cast<int>(s ^ bit), static_cast<int>(s), sign);
    }
    Sparse a(dim, dim);
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

/// Majorana operators built from the ladder operators.
std::vector<Sparse> majoranas(int modes) {
    std::vector<Sparse> out;
    const cplx i(0.0, 1.0);
    for (int j = 0; j < modes; ++j) {
        Sparse a = sparse_annihilator(modes, j);
        Sparse ad = a.adjoint();
        out.push_back(a + ad);
        out.push_back(Sparse(-i * (a - ad)));
    }
    return out;
}

cplx expectation(const CVector &psi, const Sparse &op) { return psi.dot(op * psi); }

}  // namespace

CMatrix annihilator(int modes, int mode) {
    check_modes(modes);
    if (mode < 0 || mode >= modes) throw std::invalid_argument("mode out of range");
    return CMatrix(sparse_annihilator(modes, mode));
}

CMatrix fock_hamiltonian(const CMatrix &bdg) {
    if (bdg.rows() != bdg.cols() || bdg.rows() % 2 != 0) throw std::invalid_argument("BdG matrix must be even and square");
    const int v = static_cast<int>(bdg.rows() / 2);
    check_modes(v);
    std::vector<Sparse> phi;
    for (int j = 0; j < v; ++j) phi.push_back(sparse_annihilator(v, j));
    for (int j = 0; j < v; ++j) phi.push_back(sparse_annihilator(v, j).adjoint());
    const int dim = 1 << v;
    Sparse h(dim, dim);
    for (int i = 0; i < 2 * v; ++i) {
        Sparse row(dim, dim);
        for (int j = 0; j < 2 * v; ++j) {
            if (bdg(i, j) != cplx(0.0)) row += bdg(i, j) * phi[j];
        }
        h += Sparse(phi[i].adjoint()) * row;
    }
    return 0.5 * CMatrix(h);
}

FockGround fock_ground_state(const CMatrix &bdg) {
    CMatrix h = fock_hamiltonian(bdg);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
    FockGround g;
    g.modes = static_cast<int>(bdg.rows() / 2);
    g.energy = es.eigenvalues()(0);
    g.gap = es.eigenvalues()(1) - es.eigenvalues()(0);
    g.state = es.eigenvectors().col(0);
    return g;
}

RMatrix fock_covariance(const CVector &state, int modes) {
    check_modes(modes);
    auto c = majoranas(modes);
    RMatrix b = RMatrix::Zero(2 * modes, 2 * modes);
    for (int j = 0; j < 2 * modes; ++j) {
        for (int k = 0; k < 2 * modes; ++k) {
            if (j == k) continue;
            b(j, k) = (cplx(0.0, 1.0) * expectation(state, Sparse(c[j] * c[k]))).real();
        }
    }
    return b;
}

CMatrix fock_normal_correlator(const CVector &state, int modes) {
    check_modes(modes);
    CMatrix out(modes, modes);
    for (int j = 0; j < modes; ++j) {
        Sparse aj = sparse_annihilator(modes, j);
        for (int k = 0; k < modes; ++k) {
            out(j, k) = expectation(state, Sparse(Sparse(aj.adjoint()) * sparse_annihilator(modes, k)));
        }
    }
    return out;
}

CMatrix fock_anomalous_correlator(const CVector &state, int modes) {
    check_modes(modes);
    CMatrix out(modes, modes);
    for (int j = 0; j < modes; ++j) {
        Sparse ajd = sparse_annihilator(modes, j).adjoint();
        for (int k = 0; k < modes; ++k) {
            Sparse akd = sparse_annihilator(modes, k).adjoint();
            out(j, k) = expectation(state, Sparse(ajd * akd));
        }
    }
    return out;
}

CMatrix fock_reduced_density_matrix(const CVector &state, int modes, const std::vector<int> &subset) {
    check_modes(modes);
    const int m = static_cast<int>(subset.size());
    if (m < 1 || m > modes) throw std::invalid_argument("bad subset");
    auto global = majoranas(modes);
    auto local = majoranas(m);
    const int dim = 1 << m;
    const int gdim = 1 << modes;
    CMatrix rho = CMatrix::Zero(dim, dim);
    for (std::uint32_t mask = 0; mask < (1u << (2 * m)); ++mask) {
        Sparse cg(gdim, gdim), cl(dim, dim);
        cg.setIdentity();
        cl.setIdentity();
        for (int a = 0; a < 2 * m; ++a) {
            if (!(mask & (1u << a))) continue;
            cg = Sparse(cg * global[2 * subset[a / 2] + a % 2]);
            cl = Sparse(cl * local[a]);
        }
        cplx w = expectation(state, Sparse(cg.adjoint()));
        if (std::abs(w) < 1e-15) continue;
        rho += w * CMatrix(cl);
    }
    return rho / static_cast<double>(dim);
}

TwoModeProduct two_mode_product_state() {
    CMatrix up = annihilator(2, 0);
    CMatrix dn = annihilator(2, 1);
    CVector vac = CVector::Zero(4);
    vac(0) = 1.0;
    CVector psi = (vac + up.adjoint() * dn.adjoint() * vac) / std::sqrt(2.0);
    TwoModeProduct out;
    CMatrix normal = fock_normal_correlator(psi, 2);
    out.n_up = normal(0, 0).real();
    out.n_down = normal(1, 1).real();
    out.pair = fock_anomalous_correlator(psi, 2)(0, 1);
    out.covariance = fock_covariance(psi, 2);
    return out;
}

RMatrix product_state_covariance(int sites) {
    if (sites < 1) throw std::invalid_argument("need at least one site");
    RMatrix pair = two_mode_product_state().covariance;
    RMatrix b = RMatrix::Zero(4 * sites, 4 * sites);
    for (int i = 0; i < sites; ++i) {
        const int idx[4] = {2 * i, 2 * i + 1, 2 * (sites + i), 2 * (sites + i) + 1};
        for (int p = 0; p < 4; ++p) {
            for (int q = 0; q < 4; ++q) b(idx[p], idx[q]) = pair(p, q);
        }
    }
    return b;
}

}  // namespace ffkit::oracle
