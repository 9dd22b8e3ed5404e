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

#include "ffkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ffkit/error.hpp"

namespace ffkit {

namespace {

double norm_of(const HermitianSpectrum &s) {
    if (s.values.size() == 0) return 0.0;
    return std::max(std::abs(s.values(0)), std::abs(s.values(s.values.size() - 1)));
}

void require_gap(const HermitianSpectrum &s, double gap_floor) {
    double gap = spectral_gap(s);
    if (!(gap > gap_floor)) {
        fail(ErrorCode::gapless_input,
             "spectral gap " + std::to_string(gap) + " not above floor " + std::to_string(gap_floor));
    }
}

// Merge two spectra into one sorted spectrum acting on the direct sum space.
HermitianSpectrum direct_sum(const HermitianSpectrum &a, const HermitianSpectrum &b) {
    const Eigen::Index na = a.values.size();
    const Eigen::Index nb = b.values.size();
    const Eigen::Index n = na + nb;
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto value = [&](Eigen::Index k) { return k < na ? a.values(k) : b.values(k - na); };
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return value(x) < value(y); });
    HermitianSpectrum out;
    out.values.resize(n);
    out.vectors = CMatrix::Zero(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index k = order[c];
        out.values(c) = value(k);
        if (k < na) {
            out.vectors.col(c).head(na) = a.vectors.col(k);
        } else {
            out.vectors.col(c).tail(nb) = b.vectors.col(k - na);
        }
    }
    return out;
}

}  // namespace

HermitianSpectrum hermitian_spectrum(const CMatrix &m) {
    if (m.rows() != m.cols()) fail(ErrorCode::invalid_input, "eigensolver input must be square");
    if (hermiticity_residual(m) > 1e-10 * std::max(1.0, max_abs(m))) {
        fail(ErrorCode::invalid_input, "eigensolver input is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    if (solver.info() != Eigen::Success) fail(ErrorCode::invalid_input, "eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianSpectrum bdg_spectrum(const BdGMatrix &a) {
    const int v = a.modes();
    const CMatrix &m = a.data();
    if (a.basis() == Basis::dirac && v > 0 && m.topRightCorner(v, v).isZero(0.0) &&
        m.bottomLeftCorner(v, v).isZero(0.0)) {
        return direct_sum(hermitian_spectrum(m.topLeftCorner(v, v)),
                          hermitian_spectrum(m.bottomRightCorner(v, v)));
    }
    return hermitian_spectrum(m);
}

double spectral_gap(const HermitianSpectrum &spectrum) {
    if (spectrum.values.size() == 0) return 0.0;
    return spectrum.values.cwiseAbs().minCoeff();
}

double spectral_gap(const BdGMatrix &a) { return spectral_gap(bdg_spectrum(a)); }

double default_gap_floor(const HermitianSpectrum &spectrum) { return 1e-8 * norm_of(spectrum); }

CMatrix matrix_sign(const HermitianSpectrum &spectrum, double gap_floor) {
    require_gap(spectrum, gap_floor);
    RVector signs = spectrum.values.unaryExpr([](double x) { return x > 0.0 ? 1.0 : -1.0; });
    return spectrum.vectors * signs.asDiagonal() * spectrum.vectors.adjoint();
}

CMatrix matrix_sign(const BdGMatrix &a, double gap_floor) { return matrix_sign(bdg_spectrum(a), gap_floor); }

CMatrix matrix_sign(const BdGMatrix &a) {
    auto spectrum = bdg_spectrum(a);
    return matrix_sign(spectrum, default_gap_floor(spectrum));
}

CMatrix majorana_unitary(int modes) {
    const double r = 1.0 / std::sqrt(2.0);
    const cplx i_unit(0.0, 1.0);
    CMatrix omega = CMatrix::Zero(2 * modes, 2 * modes);
    for (int j = 0; j < modes; ++j) {
        omega(2 * j, j) = r;
        omega(2 * j, modes + j) = r;
        omega(2 * j + 1, j) = -i_unit * r;
        omega(2 * j + 1, modes + j) = i_unit * r;
    }
    return omega;
}

BdGMatrix dirac_to_majorana(const BdGMatrix &a) {
    if (a.basis() != Basis::dirac) fail(ErrorCode::invalid_input, "expected a Dirac-basis matrix");
    CMatrix omega = majorana_unitary(a.modes());
    CMatrix m = omega * a.data() * omega.adjoint();
    return BdGMatrix(0.5 * (m + m.adjoint()), Basis::majorana);
}

RMatrix doubled_permutation(int sites) {
    const int v = sites;
    RMatrix pi = RMatrix::Zero(4 * v, 4 * v);
    for (int i = 0; i < v; ++i) {
        pi(i, i) = 1.0;                  // Psi_up
        pi(v + i, 2 * v + i) = 1.0;      // Psi_up^dag
        pi(2 * v + i, 3 * v + i) = -1.0; // -Psi_dn^dag
        pi(3 * v + i, v + i) = 1.0;      // Psi_dn
    }
    return pi;
}

BdGMatrix doubled_to_dirac(const BdGMatrix &c) {
    if (c.basis() != Basis::doubled) fail(ErrorCode::invalid_input, "expected a doubled-basis matrix");
    if (c.size() % 4 != 0) fail(ErrorCode::invalid_size, "doubled matrix dimension must be a multiple of 4");
    RMatrix pi = doubled_permutation(c.size() / 4);
    CMatrix a = pi.transpose().cast<cplx>() * c.data() * pi.cast<cplx>();
    return BdGMatrix(std::move(a), Basis::dirac);
}

MajoranaCovariance::MajoranaCovariance(RMatrix data) : data_(std::move(data)) {
    if (data_.rows() != data_.cols() || data_.rows() % 2 != 0) {
        fail(ErrorCode::invalid_input, "covariance must be square with even dimension");
    }
    if (antisymmetry_residual(data_) > 1e-10) fail(ErrorCode::invalid_input, "covariance is not antisymmetric");
}

double MajoranaCovariance::purity_residual() const {
    return max_abs(RMatrix(data_ * data_ + RMatrix::Identity(size(), size())));
}

MajoranaCovariance covariance_from_sign(const CMatrix &dirac_sign) {
    const int modes = static_cast<int>(dirac_sign.rows()) / 2;
    CMatrix omega = majorana_unitary(modes);
    CMatrix b = cplx(0.0, 1.0) * (omega * dirac_sign * omega.adjoint());
    if (max_abs(RMatrix(b.imag())) > 1e-10) {
        fail(ErrorCode::invalid_input, "sign matrix does not map to a real covariance");
    }
    RMatrix real = b.real();
    return MajoranaCovariance(0.5 * (real - real.transpose()));
}

MajoranaCovariance ground_covariance(const BdGMatrix &a, double gap_floor) {
    if (a.basis() == Basis::doubled) return ground_covariance(doubled_to_dirac(a), gap_floor);
    if (a.basis() == Basis::majorana) {
        auto spectrum = hermitian_spectrum(a.data());
        CMatrix b = cplx(0.0, 1.0) * matrix_sign(spectrum, gap_floor);
        if (max_abs(RMatrix(b.imag())) > 1e-10) fail(ErrorCode::invalid_input, "covariance is not real");
        RMatrix real = b.real();
        return MajoranaCovariance(0.5 * (real - real.transpose()));
    }
    return covariance_from_sign(matrix_sign(bdg_spectrum(a), gap_floor));
}

MajoranaCovariance ground_covariance(const BdGMatrix &a) {
    if (a.basis() == Basis::doubled) return ground_covariance(doubled_to_dirac(a));
    auto spectrum = bdg_spectrum(a);
    double floor = default_gap_floor(spectrum);
    if (a.basis() == Basis::majorana) return ground_covariance(a, floor);
    return covariance_from_sign(matrix_sign(spectrum, floor));
}

MajoranaCovariance ground_covariance(const QuadraticHamiltonian &h) { return ground_covariance(assemble_bdg(h)); }

RVector site_occupations(const MajoranaCovariance &b) {
    RVector n(b.modes());
    for (int j = 0; j < b.modes(); ++j) n(j) = 0.5 * (1.0 + b.data()(2 * j, 2 * j + 1));
    return n;
}

DiracCorrelations dirac_correlations(const MajoranaCovariance &b) {
    const int v = b.modes();
    // Phi = M c with M = Omega^dag / sqrt(2); <Phi_a^dag Phi_b> = (M^* Gamma M^T)_ab.
    CMatrix m = majorana_unitary(v).adjoint() / std::sqrt(2.0);
    CMatrix gamma = CMatrix::Identity(2 * v, 2 * v) - cplx(0.0, 1.0) * b.data().cast<cplx>();
    CMatrix g = m.conjugate() * gamma * m.transpose();
    return {g.topLeftCorner(v, v), g.topRightCorner(v, v)};
}

OccupiedProjector::OccupiedProjector(CMatrix correlator) : data_(std::move(correlator)) {
    if (data_.rows() != data_.cols()) fail(ErrorCode::invalid_input, "projector must be square");
    if (hermiticity_residual(data_) > 1e-10) fail(ErrorCode::invalid_input, "projector is not Hermitian");
}

double OccupiedProjector::idempotency_residual() const { return max_abs(CMatrix(data_ * data_ - data_)); }

CMatrix negative_projector(const HermitianSpectrum &spectrum, double gap_floor) {
    require_gap(spectrum, gap_floor);
    Eigen::Index occupied = 0;
    while (occupied < spectrum.values.size() && spectrum.values(occupied) < 0.0) ++occupied;
    const CMatrix &u = spectrum.vectors;
    return u.leftCols(occupied) * u.leftCols(occupied).adjoint();
}

OccupiedProjector occupied_projector(const QuadraticHamiltonian &h, double gap_floor) {
    if (!h.number_conserving()) {
        fail(ErrorCode::unsupported_model, "occupied projector requires a number-conserving Hamiltonian");
    }
    auto spectrum = hermitian_spectrum(h.hop());
    return OccupiedProjector(negative_projector(spectrum, gap_floor).transpose());
}

OccupiedProjector occupied_projector(const QuadraticHamiltonian &h) {
    if (!h.number_conserving()) {
        fail(ErrorCode::unsupported_model, "occupied projector requires a number-conserving Hamiltonian");
    }
    auto spectrum = hermitian_spectrum(h.hop());
    return OccupiedProjector(negative_projector(spectrum, default_gap_floor(spectrum)).transpose());
}

}  // namespace ffkit
