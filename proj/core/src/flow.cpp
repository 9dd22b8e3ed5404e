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

#include "ffkit/flow.hpp"

#include <cmath>
#include <numbers>

#include "ffkit/error.hpp"

namespace ffkit {

namespace {

using Weight = double (*)(double omega, double width);

double exact_weight(double omega, double) { return -1.0 / omega; }

double filtered_weight(double omega, double width) {
    if (omega == 0.0) return 0.0;
    return -(-std::expm1(-0.5 * omega * omega * width * width)) / omega;
}

FlowGenerator build_generator(const CMatrix &c, const CMatrix &dc, bool all_pairs, Weight weight, double width) {
    if (c.rows() != c.cols() || dc.rows() != c.rows() || dc.cols() != c.cols())
        fail(ErrorCode::invalid_size, "generator needs square matrices of equal size");
    if (hermiticity_residual(dc) > kInputTolerance * std::max(1.0, max_abs(dc)))
        fail(ErrorCode::invalid_input, "path derivative is not Hermitian");
    HermitianSpectrum sp = hermitian_spectrum(c);
    if (!(spectral_gap(sp) > default_gap_floor(sp))) fail(ErrorCode::gapless_input, "generator needs a gapped matrix");
    const Eigen::Index n = c.rows();
    CMatrix m = sp.vectors.adjoint() * dc * sp.vectors;
    const RVector &lam = sp.values;
    for (Eigen::Index col = 0; col < n; ++col) {
        for (Eigen::Index row = 0; row < n; ++row) {
            bool mixed = (lam(row) > 0.0) != (lam(col) > 0.0);
            if (row == col || !(all_pairs || mixed)) {
                m(row, col) = 0.0;
            } else {
                m(row, col) *= cplx(0.0, weight(lam(row) - lam(col), width));
            }
        }
    }
    CMatrix k = sp.vectors * m * sp.vectors.adjoint();
    FlowGenerator g;
    g.k = 0.5 * (k + k.adjoint());
    g.width = width;
    return g;
}

CMatrix unitary_exp(const CMatrix &k, double h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (k + k.adjoint()));
    CVector phases(es.eigenvalues().size());
    for (Eigen::Index j = 0; j < phases.size(); ++j) phases(j) = std::polar(1.0, -h * es.eigenvalues()(j));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double spectral_norm_hermitian(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

FlowGenerator exact_flow_generator(const CMatrix &c, const CMatrix &dc) {
    FlowGenerator g = build_generator(c, dc, false, exact_weight, 0.0);
    g.variant = FlowVariant::exact;
    return g;
}

FlowGenerator filtered_flow_generator(const CMatrix &c, const CMatrix &dc, double delta_e, double width) {
    if (!(width > 0.0)) fail(ErrorCode::invalid_parameter, "filter width must be positive");
    if (!(delta_e > 0.0)) fail(ErrorCode::invalid_parameter, "gap must be positive");
    FlowGenerator g = build_generator(c, dc, true, filtered_weight, width);
    g.variant = FlowVariant::filtered;
    return g;
}

FlowGenerator path_flow_generator(const DoubledSystem &sys, double theta, FlowVariant variant, double width) {
    CMatrix c = path_matrix_angle(sys, theta);
    CMatrix dc = path_tangent_angle(sys, theta);
    FlowGenerator g = variant == FlowVariant::exact ? exact_flow_generator(c, dc)
                                                    : filtered_flow_generator(c, dc, sys.delta_e(), width);
    g.parameter = std::sin(theta);
    return g;
}

TransportResult transport_between(const DoubledSystem &sys, double s_from, double s_to, int steps, FlowVariant variant,
                                  double width) {
    if (steps < 1) fail(ErrorCode::invalid_parameter, "transport needs at least one step");
    if (variant == FlowVariant::filtered && !(width > 0.0))
        fail(ErrorCode::invalid_parameter, "filter width must be positive");
    TransportResult res;
    res.steps = steps;
    res.variant = variant;
    res.width = width;

    CMatrix p = path_negative_projector(sys, s_from);
    const Eigen::Index n = p.rows();
    const double trace0 = p.trace().real();
    CMatrix u = CMatrix::Identity(n, n);
    const double theta_from = std::asin(s_from);
    const double theta_to = std::asin(s_to);
    if (theta_from != theta_to) {
        const double h = (theta_to - theta_from) / steps;
        for (int j = 0; j < steps; ++j) {
            double mid = theta_from + (j + 0.5) * h;
            FlowGenerator g = path_flow_generator(sys, mid, variant, width);
            CMatrix step = unitary_exp(g.k, h);
            p = step * p * step.adjoint();
            u = step * u;
            double theta = j + 1 == steps ? theta_to : theta_from + (j + 1) * h;
            double s = std::clamp(std::sin(theta), 0.0, 1.0);
            res.s_grid.push_back(s);
            res.errors.push_back(spectral_norm_hermitian(p - path_negative_projector(sys, s)));
            res.idempotency_residual = std::max(res.idempotency_residual, max_abs(CMatrix(p * p - p)));
            res.trace_drift = std::max(res.trace_drift, std::abs(p.trace().real() - trace0));
        }
    }
    // The final comparison uses a direct eigensolve of C at the end point.
    HermitianSpectrum sp = hermitian_spectrum(path_matrix(sys, s_to).data());
    res.final_error = spectral_norm_hermitian(p - negative_projector(sp, default_gap_floor(sp)));
    res.unitarity_residual = max_abs(CMatrix(u.adjoint() * u - CMatrix::Identity(n, n)));
    return res;
}

TransportResult transport_projector(const InterpolationPath &path, int steps, FlowVariant variant, double width) {
    if (steps < 2) fail(ErrorCode::invalid_parameter, "transport needs at least two steps");
    return transport_between(path.system, 1.0, 0.0, steps, variant, width);
}

std::vector<DecayRecord> generator_profile(const FlowGenerator &k, const Lattice &lattice) {
    const int v = lattice.size();
    if (k.k.rows() != 4 * v) fail(ErrorCode::invalid_size, "generator does not match the doubled lattice");
    auto dist = [&](int p, int q) {
        DoubledSite a{(p % (2 * v)) % v, p < 2 * v ? Copy::up : Copy::down};
        DoubledSite b{(q % (2 * v)) % v, q < 2 * v ? Copy::up : Copy::down};
        return doubled_metric(lattice, a, b);
    };
    return decay_profile(k.k, dist);
}

GeneratorLocality generator_locality_profile(const FlowGenerator &k, const DoubledSystem &sys, double mu) {
    GeneratorLocality out;
    out.profile = generator_profile(k, sys.lattice());
    out.reference_length = correlation_length(locality_profile(sys.base(), mu), sys.delta_e());
    double peak = 0.0;
    for (const auto &r : out.profile) peak = std::max(peak, r.max_abs);
    try {
        out.fit = fit_decay(out.profile, 1e-12 * peak, 1);
    } catch (const Error &e) {
        if (e.code() != ErrorCode::undefined_fit) throw;
    }
    return out;
}

double measured_flow_length(const DoubledSystem &sys, double s) {
    FlowGenerator g = path_flow_generator(sys, std::asin(s), FlowVariant::exact);
    std::vector<DecayRecord> profile = generator_profile(g, sys.lattice());
    double peak = 0.0;
    for (const auto &r : profile) peak = std::max(peak, r.max_abs);
    return fit_decay(std::move(profile), 1e-12 * peak, 1).xi;
}

}  // namespace ffkit
