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
#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

namespace ffkit {
namespace {

const KitaevParams kTopological{.t = 1.0, .delta = 0.7, .mu_chem = 0.5};

double operator_norm(const CMatrix &m) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

TEST(ExactGenerator, HermitianAndGeneratesProjectorFlow) {
    DoubledSystem sys(kitaev_chain(8, kTopological, true));
    for (double theta : {0.0, 0.5, 1.2}) {
        FlowGenerator g = path_flow_generator(sys, theta, FlowVariant::exact);
        EXPECT_LT(hermiticity_residual(g.k), 1e-10);
        EXPECT_NEAR(g.parameter, std::sin(theta), 1e-15);
        const double h = 1e-5;
        double lo = std::max(0.0, theta - h), hi = theta + h;
        CMatrix dp = (path_negative_projector(sys, std::sin(hi)) - path_negative_projector(sys, std::sin(lo))) / (hi - lo);
        CMatrix p = path_negative_projector(sys, std::sin(theta));
        CMatrix predicted = cplx(0.0, -1.0) * (g.k * p - p * g.k);
        EXPECT_LT(max_abs(CMatrix(dp - predicted)), 1e-6) << "theta = " << theta;
    }
}

TEST(ExactGenerator, ConstantPathHasNoGenerator) {
    DoubledSystem sys(kitaev_chain(6, kTopological, true));
    CMatrix c = path_matrix_angle(sys, 0.3);
    FlowGenerator g = exact_flow_generator(c, CMatrix::Zero(c.rows(), c.cols()));
    EXPECT_EQ(max_abs(g.k), 0.0);
}

TEST(ExactGenerator, NormBoundedByDerivativeOverGap) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 4; ++trial) {
        QuadraticHamiltonian h = testing::random_hamiltonian(10, rng);
        BdGMatrix a = assemble_bdg(h);
        double gap = spectral_gap(a);
        if (gap < 0.05) continue;
        CMatrix dc = assemble_bdg(testing::random_hamiltonian(10, rng)).data();
        FlowGenerator g = exact_flow_generator(a.data(), dc);
        EXPECT_LE(operator_norm(g.k), operator_norm(dc) / gap);
    }
}

TEST(ExactGenerator, RejectsGaplessAndNonHermitian) {
    CMatrix c = CMatrix::Zero(2, 2);
    c(0, 0) = 1.0;
    EXPECT_TRUE(testing::throws_code([&] { exact_flow_generator(c, CMatrix::Identity(2, 2)); }, ErrorCode::gapless_input));
    c(1, 1) = -1.0;
    CMatrix bad = CMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    EXPECT_TRUE(testing::throws_code([&] { exact_flow_generator(c, bad); }, ErrorCode::invalid_input));
    EXPECT_TRUE(testing::throws_code([&] { filtered_flow_generator(c, CMatrix::Identity(2, 2), 1.0, 0.0); },
                                     ErrorCode::invalid_parameter));
}

TEST(ExactGenerator, DecaysAwayFromDiagonal) {
    DoubledSystem sys(kitaev_chain(32, {.t = 1.0, .delta = 0.7, .mu_chem = 3.0}, true));
    FlowGenerator g = path_flow_generator(sys, 0.0, FlowVariant::exact);
    GeneratorLocality loc = generator_locality_profile(g, sys, std::log(2.0));
    ASSERT_TRUE(loc.fit.has_value());
    EXPECT_GT(loc.fit->r2, 0.9);
    EXPECT_LT(loc.fit->xi, loc.reference_length);
    double peak = 0.0;
    for (const auto &r : loc.profile) peak = std::max(peak, r.max_abs);
    EXPECT_LT(loc.profile.back().max_abs, 1e-2 * peak);
}

TEST(ExactGenerator, TrivialPathIsOnSite) {
    DoubledSystem sys(trivial_model(6, 1.0));
    FlowGenerator g = path_flow_generator(sys, std::asin(1.0), FlowVariant::exact);
    const int v = 6;
    for (int p = 0; p < 4 * v; ++p)
        for (int q = 0; q < 4 * v; ++q)
            if (p % v != q % v) EXPECT_LT(std::abs(g.k(p, q)), 1e-12);
    for (const auto &r : generator_profile(g, sys.lattice()))
        if (r.distance > 1) EXPECT_LT(r.max_abs, 1e-12);
}

TEST(ExactGenerator, LengthGrowsWhenGapShrinks) {
    DoubledSystem wide(kitaev_chain(32, {.t = 1.0, .delta = 0.7, .mu_chem = 3.0}, true));
    DoubledSystem narrow(kitaev_chain(32, {.t = 1.0, .delta = 0.7, .mu_chem = 2.5}, true));
    ASSERT_NEAR(narrow.delta_e(), 0.5 * wide.delta_e(), 1e-9);
    double xi_wide = measured_flow_length(wide);
    double xi_narrow = measured_flow_length(narrow);
    EXPECT_GT(xi_narrow, xi_wide);
}

TEST(FilteredGenerator, ConvergesToExactTransport) {
    DoubledSystem sys(kitaev_chain(12, kTopological, true));
    InterpolationPath path = uniform_path(sys, 2);
    const double de = sys.delta_e();
    TransportResult exact = transport_projector(path, 100, FlowVariant::exact);
    TransportResult wide = transport_projector(path, 100, FlowVariant::filtered, 8.0 / de);
    EXPECT_LT(std::abs(wide.final_error - exact.final_error), 1e-8);
    EXPECT_LT(wide.final_error, 1e-8);
}

TEST(FilteredGenerator, ErrorFallsLikeGaussianInWidth) {
    DoubledSystem sys(kitaev_chain(12, kTopological, true));
    InterpolationPath path = uniform_path(sys, 2);
    const double de = sys.delta_e();
    std::vector<double> t2, logerr;
    double prev = 1e9;
    for (double t : {1.0, 1.5, 2.0, 2.5, 3.0}) {
        TransportResult r = transport_projector(path, 200, FlowVariant::filtered, t / de);
        EXPECT_LT(r.final_error, prev);
        prev = r.final_error;
        t2.push_back(t * t);
        logerr.push_back(std::log(r.final_error));
    }
    LinearFit f = linear_fit(t2, logerr);
    EXPECT_LT(f.slope, 0.0);
    EXPECT_GT(f.r2, 0.95);
}

TEST(FilteredGenerator, LengthGrowsLinearlyWithWidthOnGenericPath) {
    // Random on-site potential as the path direction: dC mixes distinct
    // levels of the same sign, which the filter spreads over a range ~ v T.
    const int v = 96;
    QuadraticHamiltonian h = kitaev_chain(v, {.t = 1.0, .delta = 0.7, .mu_chem = 2.5}, true);
    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix pot = CMatrix::Zero(v, v);
    for (int i = 0; i < v; ++i) pot(i, i) = u(rng);
    BdGMatrix a = assemble_bdg(h);
    BdGMatrix da = assemble_bdg(QuadraticHamiltonian(h.lattice(), pot, CMatrix::Zero(v, v)));
    auto dist = [&](int p, int q) { return h.lattice().distance(p % v, q % v); };
    std::vector<double> widths{1.0, 2.0, 3.0, 4.0}, lengths;
    for (double t : widths) {
        FlowGenerator g = filtered_flow_generator(a.data(), da.data(), spectral_gap(a), t);
        auto profile = decay_profile(g.k, dist);
        lengths.push_back(fit_decay(profile, 1e-12 * max_abs(g.k), 1).xi);
    }
    for (std::size_t k = 1; k < lengths.size(); ++k) EXPECT_GT(lengths[k], lengths[k - 1]);
    LinearFit f = linear_fit(widths, lengths);
    EXPECT_GT(f.slope, 0.0);
    EXPECT_GT(f.r2, 0.9);
}

TEST(FilteredGenerator, DoubledFamilySaturatesAtExactLength) {
    // Along the doubled family dC only links the +/- partners of each base
    // mode, so the filter can only shorten the exact generator.
    DoubledSystem sys(kitaev_chain(32, {.t = 1.0, .delta = 0.7, .mu_chem = 3.0}, true));
    FlowGenerator exact = path_flow_generator(sys, 0.3, FlowVariant::exact);
    FlowGenerator wide = path_flow_generator(sys, 0.3, FlowVariant::filtered, 10.0 / sys.delta_e());
    EXPECT_LT(max_abs(CMatrix(exact.k - wide.k)), 1e-12);
}

TEST(Transport, ThousandStepsReachesBaseGroundState) {
    InterpolationPath path = uniform_path(DoubledSystem(kitaev_chain(16, kTopological, true)), 2);
    TransportResult r = transport_projector(path, 1000, FlowVariant::exact);
    EXPECT_LT(r.final_error, 1e-6);
    EXPECT_LT(r.unitarity_residual, 1e-8);
    EXPECT_LT(r.idempotency_residual, 1e-8);
    EXPECT_LT(r.trace_drift, 1e-8);
    ASSERT_EQ(r.errors.size(), 1000u);
    EXPECT_EQ(r.s_grid.back(), 0.0);
    for (double e : r.errors) EXPECT_GE(e, 0.0);
}

TEST(Transport, ConvergesAtLeastQuadratically) {
    InterpolationPath path = uniform_path(DoubledSystem(kitaev_chain(16, kTopological, true)), 2);
    double e2 = transport_projector(path, 2, FlowVariant::exact).final_error;
    double e4 = transport_projector(path, 4, FlowVariant::exact).final_error;
    double e8 = transport_projector(path, 8, FlowVariant::exact).final_error;
    EXPECT_GE(std::log2(e2 / e4), 2.0);
    EXPECT_GE(std::log2(e4 / e8), 2.0);
}

TEST(Transport, ZeroLengthIsIdentity) {
    DoubledSystem sys(kitaev_chain(8, kTopological, true));
    TransportResult r = transport_between(sys, 1.0, 1.0, 10, FlowVariant::exact);
    EXPECT_LT(r.final_error, 1e-12);
    EXPECT_EQ(r.unitarity_residual, 0.0);
    EXPECT_TRUE(r.errors.empty());
}

TEST(Transport, RejectsBadArguments) {
    InterpolationPath path = uniform_path(DoubledSystem(kitaev_chain(6, kTopological, true)), 2);
    EXPECT_TRUE(testing::throws_code([&] { transport_projector(path, 1, FlowVariant::exact); }, ErrorCode::invalid_parameter));
    EXPECT_TRUE(testing::throws_code([&] { transport_projector(path, 10, FlowVariant::filtered, 0.0); },
                                     ErrorCode::invalid_parameter));
}

}  // namespace
}  // namespace ffkit
