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

#include "ffkit/doubling.hpp"

#include <algorithm>
#include <cmath>

#include "ffkit/error.hpp"

namespace ffkit {

namespace {

void check_parameter(double s) {
    if (!(s >= 0.0 && s <= 1.0)) fail(ErrorCode::invalid_parameter, "path parameter must lie in [0, 1]");
}

double amplitude(double s) { return std::sqrt(std::max(0.0, 1.0 - s * s)); }

CMatrix family(const DoubledSystem &sys, double diag, double off) {
    const CMatrix &a = sys.bdg().data();
    const Eigen::Index n = a.rows();
    CMatrix c = CMatrix::Zero(2 * n, 2 * n);
    c.topLeftCorner(n, n) = diag * a;
    c.bottomRightCorner(n, n) = -diag * a;
    c.topRightCorner(n, n).diagonal().setConstant(cplx(off, 0.0));
    c.bottomLeftCorner(n, n).diagonal().setConstant(cplx(off, 0.0));
    return c;
}

/// Rows of [-U sin(phi/2); U cos(phi/2)], the negative eigenvectors of C_s.
CMatrix negative_vectors(const DoubledSystem &sys, double s, const std::vector<int> &indices) {
    const HermitianSpectrum &sp = sys.base_spectrum();
    const Eigen::Index n = sp.values.size();
    const double a = amplitude(s);
    const double d = s * sys.delta_e();
    RVector sn(n), cs(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double half = 0.5 * std::atan2(d, a * sp.values(k));
        sn(k) = -std::sin(half);
        cs(k) = std::cos(half);
    }
    CMatrix w(static_cast<Eigen::Index>(indices.size()), n);
    for (std::size_t r = 0; r < indices.size(); ++r) {
        int q = indices[r];
        if (q < 0 || q >= 2 * n) fail(ErrorCode::invalid_input, "projector index out of range");
        if (q < n) {
            w.row(r) = sp.vectors.row(q).cwiseProduct(sn.transpose().cast<cplx>());
        } else {
            w.row(r) = sp.vectors.row(q - n).cwiseProduct(cs.transpose().cast<cplx>());
        }
    }
    return w;
}

std::vector<int> nambu_sites(int sites) {
    std::vector<int> out(2 * static_cast<std::size_t>(sites));
    for (std::size_t q = 0; q < out.size(); ++q) out[q] = static_cast<int>(q % sites);
    return out;
}

/// Indices (and their sites) of `components` Nambu components over every site of the partition.
void partition_indices(const SectorPartition &partition, int sites, int components, std::vector<int> &indices,
                       std::vector<int> &site_of) {
    for (const auto &sector : partition.sectors) {
        for (int site : sector) {
            for (int c = 0; c < components; ++c) {
                indices.push_back(c * sites + site);
                site_of.push_back(site);
            }
        }
    }
}

}  // namespace

DoubledSystem::DoubledSystem(QuadraticHamiltonian base)
    : base_(std::move(base)), bdg_(assemble_bdg(base_)), spectrum_(bdg_spectrum(bdg_)) {
    delta_e_ = spectral_gap(spectrum_);
    if (!(delta_e_ > default_gap_floor(spectrum_)))
        fail(ErrorCode::gapless_input, "doubling needs a gapped base Hamiltonian");
}

QuadraticHamiltonian DoubledSystem::partner() const {
    return QuadraticHamiltonian(base_.lattice(), base_.hop().conjugate(), -base_.pair().conjugate());
}

InterpolationPath::InterpolationPath(DoubledSystem sys, std::vector<double> points)
    : system(std::move(sys)), grid(std::move(points)) {
    if (grid.size() < 2) fail(ErrorCode::invalid_input, "path grid needs at least the two endpoints");
    for (double s : grid) check_parameter(s);
    if (!std::is_sorted(grid.begin(), grid.end())) fail(ErrorCode::invalid_input, "path grid must be sorted");
    if (grid.front() != 0.0 || grid.back() != 1.0)
        fail(ErrorCode::invalid_input, "path grid must contain both endpoints");
}

InterpolationPath uniform_path(DoubledSystem system, int points) {
    if (points < 2) fail(ErrorCode::invalid_size, "path needs at least two points");
    std::vector<double> grid(points);
    for (int k = 0; k < points; ++k) grid[k] = static_cast<double>(k) / (points - 1);
    return InterpolationPath(std::move(system), std::move(grid));
}

BdGMatrix path_matrix(const DoubledSystem &sys, double s) {
    check_parameter(s);
    return BdGMatrix(family(sys, amplitude(s), s * sys.delta_e()), Basis::doubled);
}

CMatrix path_matrix_angle(const DoubledSystem &sys, double theta) {
    return family(sys, std::cos(theta), std::sin(theta) * sys.delta_e());
}

CMatrix path_tangent_angle(const DoubledSystem &sys, double theta) {
    return family(sys, -std::sin(theta), std::cos(theta) * sys.delta_e());
}

RVector predicted_path_spectrum(const DoubledSystem &sys, double s) {
    check_parameter(s);
    const RVector &lam = sys.base_spectrum().values;
    const Eigen::Index n = lam.size();
    const double a2 = 1.0 - s * s;
    const double d2 = s * s * sys.delta_e() * sys.delta_e();
    RVector out(2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double e = std::sqrt(a2 * lam(k) * lam(k) + d2);
        out(2 * k) = -e;
        out(2 * k + 1) = e;
    }
    std::sort(out.data(), out.data() + out.size());
    return out;
}

CMatrix path_negative_projector(const DoubledSystem &sys, double s) {
    std::vector<int> all(4 * static_cast<std::size_t>(sys.sites()));
    for (std::size_t q = 0; q < all.size(); ++q) all[q] = static_cast<int>(q);
    return path_negative_projector(sys, s, all);
}

CMatrix path_negative_projector(const DoubledSystem &sys, double s, const std::vector<int> &indices) {
    check_parameter(s);
    CMatrix w = negative_vectors(sys, s, indices);
    return w * w.adjoint();
}

MajoranaCovariance path_ground_covariance(const DoubledSystem &sys, double s) {
    const int n = 4 * sys.sites();
    CMatrix sign = CMatrix::Identity(n, n) - 2.0 * path_negative_projector(sys, s);
    RMatrix pi = doubled_permutation(sys.sites());
    CMatrix dirac = pi.transpose().cast<cplx>() * sign * pi.cast<cplx>();
    return covariance_from_sign(dirac);
}

MajoranaCovariance product_ground_state_covariance(int sites) {
    if (sites < 1) fail(ErrorCode::invalid_size, "product state needs at least one site");
    const int v = sites;
    RMatrix b = RMatrix::Zero(4 * v, 4 * v);
    for (int i = 0; i < v; ++i) {
        int up = 2 * i;
        int dn = 2 * (v + i);
        b(up, dn + 1) = -1.0;
        b(up + 1, dn) = -1.0;
        b(dn + 1, up) = 1.0;
        b(dn, up + 1) = 1.0;
    }
    return MajoranaCovariance(std::move(b));
}

double particle_hole_residual(const BdGMatrix &a) {
    BdGMatrix d = a.basis() == Basis::doubled ? doubled_to_dirac(a) : a;
    if (d.basis() != Basis::dirac) fail(ErrorCode::invalid_input, "particle-hole check expects a Dirac-basis matrix");
    const Eigen::Index n = d.size() / 2;
    CMatrix x = CMatrix::Zero(d.size(), d.size());
    x.topRightCorner(n, n).setIdentity();
    x.bottomLeftCorner(n, n).setIdentity();
    return max_abs(CMatrix(x * d.data().conjugate() * x + d.data()));
}

GapRecord gap_at(const DoubledSystem &sys, double s) {
    double gap = spectral_gap(hermitian_spectrum(path_matrix(sys, s).data()));
    return {s, gap, std::abs(gap - sys.delta_e())};
}

GapReport verify_gap_along_path(const InterpolationPath &path) {
    GapReport report;
    report.delta_e = path.system.delta_e();
    for (double s : path.grid) {
        report.records.push_back(gap_at(path.system, s));
        report.max_deviation = std::max(report.max_deviation, report.records.back().deviation);
    }
    report.pass = report.max_deviation < kGapInvarianceTolerance * report.delta_e;
    return report;
}

LocalityReport verify_locality_along_path(const InterpolationPath &path, double mu) {
    LocalityReport report;
    report.mu = mu;
    report.s1 = locality_norm(path.system.base(), mu);
    report.delta_e = path.system.delta_e();
    for (double s : path.grid) {
        double value = amplitude(s) * report.s1 + 2.0 * s * s * report.delta_e;
        report.records.push_back({s, value});
        report.max_expression = std::max(report.max_expression, value);
    }
    report.pass = report.max_expression <= report.s1 + 1e-12;
    return report;
}

InvariantRecord base_invariant(const QuadraticHamiltonian &h) {
    if (h.lattice().dimension() != 1) return base_invariant(h, disc_partition(h.lattice()));
    InvariantRecord rec;
    rec.majorana_number = majorana_number(ground_covariance(h));
    return rec;
}

InvariantRecord base_invariant(const QuadraticHamiltonian &h, const SectorPartition &partition) {
    InvariantRecord rec;
    ChernResult nu;
    if (h.number_conserving()) {
        nu = real_space_chern(occupied_projector(h), partition);
    } else {
        BdGMatrix a = assemble_bdg(h);
        HermitianSpectrum sp = bdg_spectrum(a);
        CMatrix p = negative_projector(sp, default_gap_floor(sp));
        std::vector<int> sites = nambu_sites(h.sites());
        nu = real_space_chern(p, sites, partition);
    }
    rec.nu = nu.value;
    rec.nu_imag_residual = nu.imag_residual;
    return rec;
}

InvariantRecord invariant_at(const DoubledSystem &sys, double s) {
    if (sys.lattice().dimension() != 1) return invariant_at(sys, s, disc_partition(sys.lattice()));
    InvariantRecord rec;
    rec.s = s;
    rec.majorana_number = majorana_number(path_ground_covariance(sys, s));
    return rec;
}

InvariantRecord invariant_at(const DoubledSystem &sys, double s, const SectorPartition &partition) {
    validate_partition(partition, sys.sites());
    std::vector<int> indices, site_of;
    partition_indices(partition, sys.sites(), 4, indices, site_of);
    ChernResult nu = real_space_chern(path_negative_projector(sys, s, indices), site_of, partition);
    InvariantRecord rec;
    rec.s = s;
    rec.nu = nu.value;
    rec.nu_imag_residual = nu.imag_residual;
    return rec;
}

bool is_cancelled(const InvariantRecord &record) {
    if (record.majorana_number) return *record.majorana_number == 1;
    return record.nu && std::abs(*record.nu) < kChernCancellationTolerance;
}

InvariantScan invariant_scan(const InterpolationPath &path) {
    const Lattice &lat = path.system.lattice();
    if (lat.dimension() != 1) return invariant_scan(path, disc_partition(lat));
    InvariantScan scan;
    scan.base = base_invariant(path.system.base());
    scan.cancelled = true;
    for (double s : path.grid) {
        scan.records.push_back(invariant_at(path.system, s));
        scan.cancelled = scan.cancelled && is_cancelled(scan.records.back());
    }
    return scan;
}

InvariantScan invariant_scan(const InterpolationPath &path, const SectorPartition &partition) {
    const DoubledSystem &sys = path.system;
    validate_partition(partition, sys.sites());
    InvariantScan scan;
    scan.base = base_invariant(sys.base(), partition);
    scan.cancelled = true;
    for (double s : path.grid) {
        scan.records.push_back(invariant_at(sys, s, partition));
        scan.cancelled = scan.cancelled && is_cancelled(scan.records.back());
    }
    return scan;
}

}  // namespace ffkit
