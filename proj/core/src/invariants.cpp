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

#include "ffkit/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "ffkit/error.hpp"

namespace ffkit {

namespace {

template <typename Matrix>
typename Matrix::Scalar parlett_reid(Matrix a) {
    using Scalar = typename Matrix::Scalar;
    const Eigen::Index n = a.rows();
    if (a.cols() != n || n % 2 != 0) fail(ErrorCode::invalid_input, "Pfaffian needs an even square matrix");
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (n > 0 && (a + a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        fail(ErrorCode::invalid_input, "Pfaffian input is not antisymmetric");
    }
    Scalar result(1.0);
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        Eigen::Index pivot;
        a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&pivot);
        pivot += k + 1;
        if (pivot != k + 1) {
            a.row(k + 1).swap(a.row(pivot));
            a.col(k + 1).swap(a.col(pivot));
            result = -result;
        }
        if (a(k + 1, k) == Scalar(0.0)) return Scalar(0.0);
        result *= a(k, k + 1);
        const Eigen::Index rest = n - k - 2;
        if (rest > 0) {
            auto tau = (a.row(k).tail(rest) / a(k, k + 1)).transpose().eval();
            auto col = a.col(k + 1).tail(rest).eval();
            a.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return result;
}

}  // namespace

double pfaffian(const RMatrix &s) { return parlett_reid(s); }
cplx pfaffian(const CMatrix &s) { return parlett_reid(s); }

MajoranaCovariance state_odd(int sites) {
    if (sites < 2) fail(ErrorCode::invalid_size, "reference states need at least 2 sites");
    RMatrix b = RMatrix::Zero(2 * sites, 2 * sites);
    for (int j = 0; j < sites; ++j) {
        b(2 * j, 2 * j + 1) = 1.0;
        b(2 * j + 1, 2 * j) = -1.0;
    }
    return MajoranaCovariance(std::move(b));
}

MajoranaCovariance state_even(int sites) {
    const RMatrix odd = state_odd(sites).data();
    const int n = 2 * sites;
    RMatrix b(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) b(i, j) = odd((i + 1) % n, (j + 1) % n);
    }
    return MajoranaCovariance(std::move(b));
}

int majorana_number(const MajoranaCovariance &b) {
    double impurity = b.purity_residual();
    if (impurity > kMajoranaPurityTolerance) {
        fail(ErrorCode::impure_state, "|B^2 + 1| = " + std::to_string(impurity));
    }
    return pfaffian(b.data()) > 0.0 ? 1 : -1;
}

SectorPartition disc_partition(const Lattice &lattice, double radius, std::array<double, 2> center) {
    if (lattice.dimension() != 2) fail(ErrorCode::unsupported_model, "sector partitions need a 2D lattice");
    if (!(radius > 0.0)) fail(ErrorCode::invalid_parameter, "disc radius must be positive");
    SectorPartition part;
    part.center = center;
    part.radius = radius;
    const double wedge = 2.0 * std::numbers::pi / 3.0;
    for (int site = 0; site < lattice.size(); ++site) {
        auto r = lattice.position(site);
        double dx = r[0] - center[0];
        double dy = r[1] - center[1];
        if (dx * dx + dy * dy > radius * radius) continue;
        if (dx == 0.0 && dy == 0.0) continue;
        double angle = std::atan2(dy, dx);
        if (angle < 0.0) angle += 2.0 * std::numbers::pi;
        int sector = std::min(2, static_cast<int>(angle / wedge));
        part.sectors[sector].push_back(site);
    }
    validate_partition(part, lattice.size());
    return part;
}

SectorPartition disc_partition(const Lattice &lattice) {
    if (lattice.dimension() != 2) fail(ErrorCode::unsupported_model, "sector partitions need a 2D lattice");
    double l = std::min(lattice.extent(0), lattice.extent(1));
    return disc_partition(lattice, l / 3.0,
                          {0.5 * (lattice.extent(0) - 1), 0.5 * (lattice.extent(1) - 1)});
}

void validate_partition(const SectorPartition &partition, int sites) {
    std::set<int> seen;
    for (const auto &sector : partition.sectors) {
        if (sector.empty()) fail(ErrorCode::invalid_input, "partition sector is empty");
        for (int s : sector) {
            if (s < 0 || s >= sites) fail(ErrorCode::invalid_input, "partition site outside lattice");
            if (!seen.insert(s).second) fail(ErrorCode::invalid_input, "partition sectors overlap");
        }
    }
}

ChernResult real_space_chern(const CMatrix &projector, std::span<const int> site_of_index,
                             const SectorPartition &partition) {
    if (projector.rows() != projector.cols() || static_cast<size_t>(projector.rows()) != site_of_index.size()) {
        fail(ErrorCode::invalid_input, "projector and site map disagree in size");
    }
    int max_site = site_of_index.empty() ? 0 : *std::max_element(site_of_index.begin(), site_of_index.end()) + 1;
    validate_partition(partition, max_site);
    std::vector<int> label(max_site, -1);
    for (int k = 0; k < 3; ++k) {
        for (int s : partition.sectors[k]) label[s] = k;
    }
    std::array<std::vector<Eigen::Index>, 3> idx;
    for (size_t q = 0; q < site_of_index.size(); ++q) {
        int l = label[site_of_index[q]];
        if (l >= 0) idx[l].push_back(static_cast<Eigen::Index>(q));
    }
    auto block = [&](int r, int c) { return CMatrix(projector(idx[r], idx[c])); };
    CMatrix pab = block(0, 1), pbc = block(1, 2), pca = block(2, 0);
    CMatrix pac = block(0, 2), pcb = block(2, 1), pba = block(1, 0);
    cplx forward = (pab * pbc).cwiseProduct(pca.transpose()).sum();
    cplx backward = (pac * pcb).cwiseProduct(pba.transpose()).sum();
    cplx nu = cplx(0.0, 12.0 * std::numbers::pi) * (forward - backward);
    return {nu.real(), std::abs(nu.imag())};
}

ChernResult real_space_chern(const OccupiedProjector &p, const SectorPartition &partition) {
    double impurity = p.idempotency_residual();
    if (impurity > 1e-6) fail(ErrorCode::impure_state, "P^2 != P: " + std::to_string(impurity));
    std::vector<int> sites(p.size());
    for (int q = 0; q < p.size(); ++q) sites[q] = q;
    return real_space_chern(p.single_particle(), sites, partition);
}

}  // namespace ffkit
