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

#include "ffkit/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ffkit/error.hpp"

namespace ffkit {

namespace {

double scale_of(const CMatrix &m) { return std::max(1.0, max_abs(m)); }

void add_bond(CMatrix &hop, int i, int j, cplx amplitude) {
    hop(i, j) += amplitude;
    hop(j, i) += std::conj(amplitude);
}

void add_pair(CMatrix &pair, int i, int j, cplx amplitude) {
    pair(i, j) += amplitude;
    pair(j, i) -= amplitude;
}

void add_disorder(CMatrix &hop, double width, std::uint64_t seed) {
    if (width == 0.0) return;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> shift(-0.5 * width, 0.5 * width);
    for (Eigen::Index i = 0; i < hop.rows(); ++i) hop(i, i) += shift(rng);
}

}  // namespace

BdGMatrix::BdGMatrix(CMatrix data, Basis basis) : data_(std::move(data)), basis_(basis) {
    if (data_.rows() != data_.cols() || data_.rows() % 2 != 0) {
        fail(ErrorCode::invalid_input, "BdG matrix must be square with even dimension");
    }
    if (hermiticity_residual(data_) > 1e-12 * scale_of(data_)) {
        fail(ErrorCode::invalid_input, "BdG matrix is not Hermitian");
    }
}

QuadraticHamiltonian::QuadraticHamiltonian(Lattice lattice, CMatrix hop, CMatrix pair)
    : lattice_(std::move(lattice)), hop_(std::move(hop)), pair_(std::move(pair)) {
    const int v = lattice_.size();
    if (hop_.rows() != v || hop_.cols() != v || pair_.rows() != v || pair_.cols() != v) {
        fail(ErrorCode::invalid_size, "hop and pair must be " + std::to_string(v) + "x" + std::to_string(v));
    }
    if (hermiticity_residual(hop_) > kInputTolerance * scale_of(hop_)) {
        fail(ErrorCode::invalid_input, "hopping matrix is not Hermitian");
    }
    if (antisymmetry_residual(pair_) > kInputTolerance * scale_of(pair_)) {
        fail(ErrorCode::invalid_input, "pairing matrix is not antisymmetric");
    }
}

BdGMatrix assemble_bdg(const QuadraticHamiltonian &h) {
    const int v = h.sites();
    CMatrix a(2 * v, 2 * v);
    a.topLeftCorner(v, v) = h.hop();
    a.topRightCorner(v, v) = h.pair();
    a.bottomLeftCorner(v, v) = h.pair().adjoint();
    a.bottomRightCorner(v, v) = -h.hop().conjugate();
    // Remove roundoff-level asymmetry admitted by the input tolerance.
    CMatrix sym = 0.5 * (a + a.adjoint());
    return BdGMatrix(std::move(sym), Basis::dirac);
}

double locality_norm(const QuadraticHamiltonian &h, double mu) {
    if (!(mu > 0.0)) fail(ErrorCode::invalid_parameter, "locality decay rate mu must be positive");
    const Lattice &lat = h.lattice();
    double best = 0.0;
    for (int i = 0; i < h.sites(); ++i) {
        double row = 0.0;
        for (int j = 0; j < h.sites(); ++j) {
            double w = std::sqrt(std::norm(h.hop()(i, j)) + std::norm(h.pair()(i, j)));
            if (w != 0.0) row += std::exp(mu * lat.distance(i, j)) * w;
        }
        best = std::max(best, 2.0 * row);
    }
    return best;
}

LocalityProfile locality_profile(const QuadraticHamiltonian &h, double mu) {
    LocalityProfile p;
    p.mu = mu;
    p.s1 = locality_norm(h, mu);
    p.v = 2.0 * p.s1 / mu;
    return p;
}

double correlation_length(const LocalityProfile &profile, double gap) {
    if (!(gap > 0.0)) fail(ErrorCode::gapless_input, "correlation length needs a positive gap");
    return 2.0 * profile.v / gap + profile.mu;
}

QuadraticHamiltonian kitaev_chain(int sites, const KitaevParams &p, bool periodic) {
    Lattice lat = build_chain(sites, periodic);
    CMatrix hop = CMatrix::Zero(sites, sites);
    CMatrix pair = CMatrix::Zero(sites, sites);
    for (int i = 0; i < sites; ++i) hop(i, i) = -p.mu_chem;
    const int bonds = (periodic && sites > 2) ? sites : sites - 1;
    for (int i = 0; i < bonds; ++i) {
        int j = (i + 1) % sites;
        add_bond(hop, i, j, -p.t);
        add_pair(pair, i, j, p.delta);
    }
    add_disorder(hop, p.disorder, p.seed);
    return QuadraticHamiltonian(std::move(lat), std::move(hop), std::move(pair));
}

QuadraticHamiltonian pplusip_model(int lx, int ly, const PwaveParams &p, bool periodic) {
    Lattice lat = build_square(lx, ly, periodic);
    const int v = lat.size();
    CMatrix hop = CMatrix::Zero(v, v);
    CMatrix pair = CMatrix::Zero(v, v);
    const cplx i_unit(0.0, 1.0);
    for (int y = 0; y < ly; ++y) {
        for (int x = 0; x < lx; ++x) {
            int r = lat.site_index(x, y);
            hop(r, r) = -p.mu_chem;
            if (x + 1 < lx || (periodic && lx > 2)) {
                int rx = lat.site_index((x + 1) % lx, y);
                add_bond(hop, r, rx, -p.t);
                add_pair(pair, r, rx, p.delta);
            }
            if (y + 1 < ly || (periodic && ly > 2)) {
                int ry = lat.site_index(x, (y + 1) % ly);
                add_bond(hop, r, ry, -p.t);
                add_pair(pair, r, ry, i_unit * p.delta);
            }
        }
    }
    return QuadraticHamiltonian(std::move(lat), std::move(hop), std::move(pair));
}

QuadraticHamiltonian chern_insulator_model(int lx, int ly, const ChernParams &p, bool periodic) {
    Lattice lat = build_square(lx, ly, periodic, 2);
    const int v = lat.size();
    CMatrix hop = CMatrix::Zero(v, v);
    const cplx i_unit(0.0, 1.0);
    // Hopping blocks T with c_r^dag T c_{r+e} + h.c.; T_x = t(sz - i sx)/2, T_y = t(sz - i sy)/2.
    Eigen::Matrix2cd tx, ty;
    tx << 0.5 * p.hopping, -0.5 * i_unit * p.hopping, -0.5 * i_unit * p.hopping, -0.5 * p.hopping;
    ty << 0.5 * p.hopping, -0.5 * p.hopping, 0.5 * p.hopping, -0.5 * p.hopping;
    auto add_block = [&](int cell_a, int cell_b, const Eigen::Matrix2cd &t) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) add_bond(hop, 2 * cell_a + a, 2 * cell_b + b, t(a, b));
        }
    };
    for (int y = 0; y < ly; ++y) {
        for (int x = 0; x < lx; ++x) {
            int cell = y * lx + x;
            hop(2 * cell, 2 * cell) = p.mass;
            hop(2 * cell + 1, 2 * cell + 1) = -p.mass;
            if (x + 1 < lx || (periodic && lx > 2)) add_block(cell, y * lx + (x + 1) % lx, tx);
            if (y + 1 < ly || (periodic && ly > 2)) add_block(cell, ((y + 1) % ly) * lx + x, ty);
        }
    }
    return QuadraticHamiltonian(std::move(lat), std::move(hop), CMatrix::Zero(v, v));
}

QuadraticHamiltonian dimerized_chain(int sites, const DimerParams &p, bool periodic) {
    Lattice lat = build_chain(sites, periodic);
    CMatrix hop = CMatrix::Zero(sites, sites);
    for (int i = 0; i < sites; ++i) hop(i, i) = (i % 2 == 0) ? p.stagger : -p.stagger;
    const int bonds = (periodic && sites > 2) ? sites : sites - 1;
    for (int i = 0; i < bonds; ++i) add_bond(hop, i, (i + 1) % sites, (i % 2 == 0) ? -p.t1 : -p.t2);
    add_disorder(hop, p.disorder, p.seed);
    return QuadraticHamiltonian(std::move(lat), std::move(hop), CMatrix::Zero(sites, sites));
}

QuadraticHamiltonian trivial_model(const Lattice &lattice, double gap) {
    if (!(gap > 0.0)) fail(ErrorCode::invalid_parameter, "trivial model needs a positive gap");
    const int v = lattice.size();
    CMatrix hop = CMatrix::Zero(v, v);
    hop.diagonal().setConstant(-gap);
    return QuadraticHamiltonian(lattice, std::move(hop), CMatrix::Zero(v, v));
}

QuadraticHamiltonian trivial_model(int sites, double gap) {
    return trivial_model(build_chain(sites, false), gap);
}

QuadraticHamiltonian conjugate_hamiltonian(const QuadraticHamiltonian &h) {
    return QuadraticHamiltonian(h.lattice(), h.hop().conjugate(), h.pair().conjugate());
}

}  // namespace ffkit
