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

#include "ffkit/wannier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ffkit/error.hpp"
#include "ffkit/fit.hpp"

namespace ffkit {

namespace {

/// Spectral norm of a normal matrix that is Hermitian up to a factor i.
double normal_norm(const CMatrix &m, cplx phase) {
    if (m.size() == 0) return 0.0;
    CMatrix h = phase * m;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

PositionOperator position_operator(const Lattice &lattice, Axis axis) {
    int a = static_cast<int>(axis);
    if (a >= lattice.dimension()) fail(ErrorCode::invalid_input, "lattice has no such axis");
    PositionOperator x{axis, RVector(lattice.size())};
    for (int i = 0; i < lattice.size(); ++i) x.diagonal(i) = lattice.position(i)[a];
    return x;
}

LocalizationFit localization_length(const CVector &psi, std::array<double, 2> center, const Lattice &lattice) {
    if (psi.size() != lattice.size()) fail(ErrorCode::invalid_size, "vector does not match the lattice");
    std::map<int, double> envelope;
    for (int i = 0; i < lattice.size(); ++i) {
        double amp = std::abs(psi(i));
        if (amp <= 1e-12) continue;
        auto pos = lattice.position(i);
        int bin = static_cast<int>(std::floor(std::hypot(pos[0] - center[0], pos[1] - center[1])));
        double &slot = envelope[bin];
        slot = std::max(slot, amp);
    }
    if (envelope.empty()) fail(ErrorCode::undefined_fit, "vector has no support above 1e-12");
    LocalizationFit out;
    out.bins = static_cast<int>(envelope.size());
    if (envelope.size() == 1) {
        out.degenerate = true;
        return out;
    }
    std::vector<double> xs, ys;
    for (auto [bin, amp] : envelope) {
        xs.push_back(bin);
        ys.push_back(std::log(amp));
    }
    LinearFit f = linear_fit(xs, ys);
    out.length = f.slope < 0.0 ? -1.0 / f.slope : std::numeric_limits<double>::infinity();
    out.r2 = f.r2;
    return out;
}

double WannierBasis::max_length() const {
    double m = 0.0;
    for (const auto &f : localization) m = std::max(m, f.length);
    return m;
}

WannierBasis gxg_wannier_1d(const OccupiedProjector &p, const PositionOperator &x, const Lattice &lattice) {
    if (lattice.dimension() != 1) fail(ErrorCode::unsupported_model, "GXG Wannier functions need a chain");
    if (lattice.periodic(0)) fail(ErrorCode::unsupported_model, "position operator is ill-defined on a ring");
    if (p.size() != lattice.size() || x.diagonal.size() != lattice.size())
        fail(ErrorCode::invalid_size, "projector, position and lattice disagree in size");
    double impurity = p.idempotency_residual();
    if (impurity > 1e-8) fail(ErrorCode::impure_state, "G^2 != G: " + std::to_string(impurity));

    HermitianSpectrum occ = hermitian_spectrum(p.single_particle());
    const Eigen::Index rank = std::lround(p.trace());
    CMatrix range = occ.vectors.rightCols(rank);
    CMatrix reduced = range.adjoint() * x.diagonal.cast<cplx>().asDiagonal() * range;
    HermitianSpectrum centers = hermitian_spectrum(0.5 * (reduced + reduced.adjoint()));

    WannierBasis w;
    w.functions = range * centers.vectors;
    w.centers = centers.values;
    for (Eigen::Index k = 0; k < rank; ++k) {
        w.localization.push_back(localization_length(w.functions.col(k), {w.centers(k), 0.0}, lattice));
    }
    return w;
}

double reconstruction_residual(const WannierBasis &w, const OccupiedProjector &p) {
    return max_abs(CMatrix(w.functions * w.functions.adjoint() - p.single_particle()));
}

CommutatorReport almost_commuting_report(const CMatrix &g, const PositionOperator &x, const PositionOperator &y) {
    if (g.rows() != g.cols() || g.rows() != x.diagonal.size() || g.rows() != y.diagonal.size())
        fail(ErrorCode::invalid_size, "projector and position operators disagree in size");
    CMatrix gxg = g * x.diagonal.cast<cplx>().asDiagonal() * g;
    CMatrix gyg = g * y.diagonal.cast<cplx>().asDiagonal() * g;
    CommutatorReport r;
    r.commutator_norm = normal_norm(gxg * gyg - gyg * gxg, cplx(0.0, 1.0));
    r.gxg_norm = normal_norm(gxg, 1.0);
    r.gyg_norm = normal_norm(gyg, 1.0);
    r.ratio = r.gxg_norm > 0.0 ? r.commutator_norm / r.gxg_norm : 0.0;
    return r;
}

CommutatorReport almost_commuting_report(const QuadraticHamiltonian &h) {
    if (h.lattice().dimension() != 2) fail(ErrorCode::unsupported_model, "commutator scan needs a 2D lattice");
    OccupiedProjector p = occupied_projector(h);
    return almost_commuting_report(p.single_particle(), position_operator(h.lattice(), Axis::x),
                                   position_operator(h.lattice(), Axis::y));
}

}  // namespace ffkit
