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
#include <numbers>

#include <gtest/gtest.h>

#include "ffkit/oracles.hpp"
#include "support.hpp"

namespace ffkit {
namespace {

const KitaevParams kTopological{.t = 1.0, .delta = 0.7, .mu_chem = 0.5};

DoubledSystem kitaev_doubled(int sites) { return DoubledSystem(kitaev_chain(sites, kTopological, true)); }

/// Random Hamiltonian with a comfortable gap.
QuadraticHamiltonian gapped_random(int sites, std::mt19937_64 &rng) {
    for (;;) {
        QuadraticHamiltonian h = testing::random_hamiltonian(sites, rng);
        if (spectral_gap(assemble_bdg(h)) > 0.05) return h;
    }
}

TEST(PathMatrix, Endpoints) {
    DoubledSystem sys = kitaev_doubled(6);
    const CMatrix &a = sys.bdg().data();
    CMatrix c0 = path_matrix(sys, 0.0).data();
    EXPECT_EQ(max_abs(CMatrix(c0.topLeftCorner(12, 12) - a)), 0.0);
    EXPECT_EQ(max_abs(CMatrix(c0.bottomRightCorner(12, 12) + a)), 0.0);
    EXPECT_EQ(max_abs(CMatrix(c0.topRightCorner(12, 12))), 0.0);

    CMatrix c1 = path_matrix(sys, 1.0).data();
    EXPECT_EQ(max_abs(CMatrix(c1.topLeftCorner(12, 12))), 0.0);
    EXPECT_EQ(max_abs(CMatrix(c1.topRightCorner(12, 12) - sys.delta_e() * CMatrix::Identity(12, 12))), 0.0);
    RVector ev = hermitian_spectrum(c1).values;
    EXPECT_LT((ev.cwiseAbs().array() - sys.delta_e()).abs().maxCoeff(), 1e-12);
}

TEST(PathMatrix, RejectsParameterOutsideUnitInterval) {
    DoubledSystem sys = kitaev_doubled(4);
    EXPECT_TRUE(testing::throws_code([&] { path_matrix(sys, -0.01); }, ErrorCode::invalid_parameter));
    EXPECT_TRUE(testing::throws_code([&] { path_matrix(sys, 1.01); }, ErrorCode::invalid_parameter));
    EXPECT_TRUE(testing::throws_code([&] { path_matrix(sys, std::nan("")); }, ErrorCode::invalid_parameter));
}

TEST(PathMatrix, SpectrumFollowsEigenvalueMap) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 3; ++trial) {
        DoubledSystem sys(gapped_random(50, rng));
        for (int k = 0; k <= 10; ++k) {
            double s = k / 10.0;
            RVector direct = hermitian_spectrum(path_matrix(sys, s).data()).values;
            RVector mapped = predicted_path_spectrum(sys, s);
            EXPECT_LT((direct - mapped).cwiseAbs().maxCoeff(), 1e-9) << "s = " << s;
        }
    }
}

TEST(PathMatrix, IsParticleHoleSymmetricEverywhere) {
    std::mt19937_64 rng(42);
    DoubledSystem sys(gapped_random(5, rng));
    for (double s : {0.0, 0.3, 0.77, 1.0}) EXPECT_LT(particle_hole_residual(path_matrix(sys, s)), 1e-14);
}

TEST(PathMatrix, StartIsBasePlusPartner) {
    std::mt19937_64 rng(43);
    DoubledSystem sys(gapped_random(4, rng));
    const int v = sys.sites();
    CMatrix hop = CMatrix::Zero(2 * v, 2 * v), pair = CMatrix::Zero(2 * v, 2 * v);
    QuadraticHamiltonian partner = sys.partner();
    hop.topLeftCorner(v, v) = sys.base().hop();
    hop.bottomRightCorner(v, v) = partner.hop();
    pair.topLeftCorner(v, v) = sys.base().pair();
    pair.bottomRightCorner(v, v) = partner.pair();
    BdGMatrix expected = assemble_bdg(QuadraticHamiltonian(build_chain(2 * v, false), hop, pair));
    EXPECT_LT(max_abs(CMatrix(doubled_to_dirac(path_matrix(sys, 0.0)).data() - expected.data())), 1e-14);
    // The partner is the conjugate system up to the gauge Psi -> i Psi.
    EXPECT_EQ(partner.hop(), sys.base().hop().conjugate());
    EXPECT_EQ(partner.pair(), CMatrix(-sys.base().pair().conjugate()));
}

TEST(PathMatrix, AngleFormMatchesAndTangentIsDerivative) {
    DoubledSystem sys = kitaev_doubled(5);
    const double theta = 0.4;
    EXPECT_LT(max_abs(CMatrix(path_matrix_angle(sys, theta) - path_matrix(sys, std::sin(theta)).data())), 1e-14);
    const double h = 1e-6;
    CMatrix fd = (path_matrix_angle(sys, theta + h) - path_matrix_angle(sys, theta - h)) / (2.0 * h);
    EXPECT_LT(max_abs(CMatrix(fd - path_tangent_angle(sys, theta))), 1e-8);
}

TEST(PathMatrix, ManyBodyGapIsConstant) {
    // Three base sites: six modes in Fock space.
    DoubledSystem sys(kitaev_chain(3, {.t = 1.0, .delta = 0.8, .mu_chem = 0.3}, true));
    for (double s : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        auto g = oracle::fock_ground_state(doubled_to_dirac(path_matrix(sys, s)).data());
        EXPECT_NEAR(g.gap, sys.delta_e(), 1e-9) << "s = " << s;
    }
}

TEST(AnalyticProjector, AgreesWithEigensolver) {
    std::mt19937_64 rng(44);
    DoubledSystem sys(gapped_random(8, rng));
    for (double s : {0.0, 0.2, 0.6, 0.99, 1.0}) {
        HermitianSpectrum sp = hermitian_spectrum(path_matrix(sys, s).data());
        CMatrix direct = negative_projector(sp, default_gap_floor(sp));
        EXPECT_LT(max_abs(CMatrix(path_negative_projector(sys, s) - direct)), 1e-10) << "s = " << s;
    }
    std::vector<int> rows{0, 5, 17, 30};
    CMatrix full = path_negative_projector(sys, 0.3);
    CMatrix part = path_negative_projector(sys, 0.3, rows);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) EXPECT_LT(std::abs(part(r, c) - full(rows[r], rows[c])), 1e-14);
}

TEST(Gap, KitaevPathKeepsGap) {
    InterpolationPath path = uniform_path(kitaev_doubled(32), 101);
    GapReport report = verify_gap_along_path(path);
    EXPECT_TRUE(report.pass);
    EXPECT_LT(report.max_deviation, 1e-9 * report.delta_e);
    ASSERT_EQ(report.records.size(), 101u);
    EXPECT_NEAR(report.records.front().gap, spectral_gap(path.system.bdg()), 1e-12);
    EXPECT_NEAR(report.records.back().gap, report.delta_e, 1e-12);
}

TEST(Gap, DeltaIsBaseGap) {
    QuadraticHamiltonian h = trivial_model(6, 0.4);
    EXPECT_NEAR(DoubledSystem(h).delta_e(), 0.4, 1e-14);
    QuadraticHamiltonian gapless = kitaev_chain(16, {.t = 1.0, .delta = 0.0, .mu_chem = -2.0}, true);
    EXPECT_TRUE(testing::throws_code([&] { DoubledSystem{gapless}; }, ErrorCode::gapless_input));
}

TEST(Path, RejectsMalformedGrids) {
    DoubledSystem sys = kitaev_doubled(4);
    EXPECT_TRUE(testing::throws_code([&] { InterpolationPath(sys, {0.0, 0.5}); }, ErrorCode::invalid_input));
    EXPECT_TRUE(testing::throws_code([&] { InterpolationPath(sys, {0.0, 0.7, 0.3, 1.0}); }, ErrorCode::invalid_input));
    EXPECT_TRUE(testing::throws_code([&] { InterpolationPath(sys, {0.0, 1.5, 1.0}); }, ErrorCode::invalid_parameter));
    EXPECT_TRUE(testing::throws_code([&] { uniform_path(sys, 1); }, ErrorCode::invalid_size));
}

TEST(Locality, EndpointsAndKitaevPath) {
    const double mu = std::numbers::ln2;
    InterpolationPath path = uniform_path(kitaev_doubled(32), 101);
    LocalityReport r = verify_locality_along_path(path, mu);
    EXPECT_NEAR(r.records.front().expression, locality_norm(path.system.base(), mu), 1e-12);
    EXPECT_NEAR(r.records.back().expression, 2.0 * path.system.delta_e(), 1e-12);
    EXPECT_LE(2.0 * path.system.delta_e(), r.s1);
    EXPECT_TRUE(r.pass);
}

TEST(Locality, GapAboveQuarterNormCanExceedBound) {
    // Uncoupled sites: s1 = 2 dE, so the mid-path value sqrt(1-s^2) s1 + 2 s^2 dE peaks above s1.
    InterpolationPath path = uniform_path(DoubledSystem(trivial_model(4, 1.0)), 101);
    LocalityReport r = verify_locality_along_path(path, 1.0);
    EXPECT_DOUBLE_EQ(r.s1, 2.0);
    EXPECT_FALSE(r.pass);
    EXPECT_NEAR(r.max_expression, 2.0 * (1.0 + 1.0 / 4.0) * 1.0, 1e-3);
}

TEST(Locality, QuarterNormIsSufficient) {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 5; ++trial) {
        DoubledSystem sys(gapped_random(6, rng));
        LocalityReport r = verify_locality_along_path(uniform_path(sys, 201), 0.5);
        if (sys.delta_e() <= r.s1 / 4.0) EXPECT_TRUE(r.pass);
    }
}

TEST(ProductState, TwoModeCorrelators) {
    auto two = oracle::two_mode_product_state();
    EXPECT_NEAR(two.n_up, 0.5, 1e-15);
    EXPECT_NEAR(two.n_down, 0.5, 1e-15);
    EXPECT_NEAR(two.pair.real(), 0.5, 1e-15);
    MajoranaCovariance b = product_ground_state_covariance(3);
    RVector n = site_occupations(b);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(n(i), 0.5, 1e-15);
    DiracCorrelations d = dirac_correlations(b);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(d.anomalous(i, 3 + i) - cplx(0.5)), 0.0, 1e-15);
    EXPECT_LT(max_abs(RMatrix(b.data() - oracle::product_state_covariance(3))), 1e-15);
    EXPECT_EQ(b.purity_residual(), 0.0);
}

TEST(ProductState, IsGroundStateAtPathEnd) {
    for (int v : {2, 7, 16}) {
        DoubledSystem sys(kitaev_chain(v, kTopological, true));
        MajoranaCovariance end = path_ground_covariance(sys, 1.0);
        EXPECT_LT(max_abs(RMatrix(end.data() - product_ground_state_covariance(v).data())), 1e-10);
        MajoranaCovariance direct = ground_covariance(path_matrix(sys, 1.0));
        EXPECT_LT(max_abs(RMatrix(direct.data() - product_ground_state_covariance(v).data())), 1e-10);
    }
    DoubledSystem small(kitaev_chain(3, kTopological, true));
    auto g = oracle::fock_ground_state(doubled_to_dirac(path_matrix(small, 1.0)).data());
    EXPECT_LT(max_abs(RMatrix(oracle::fock_covariance(g.state, 6) - oracle::product_state_covariance(3))), 1e-10);
}

TEST(ProductState, RejectsEmptySystem) {
    EXPECT_TRUE(testing::throws_code([] { product_ground_state_covariance(0); }, ErrorCode::invalid_size));
}

TEST(Covariance, StartIsDirectSum) {
    DoubledSystem sys = kitaev_doubled(8);
    RMatrix b = path_ground_covariance(sys, 0.0).data();
    RMatrix up = ground_covariance(sys.base()).data();
    RMatrix dn = ground_covariance(sys.partner()).data();
    EXPECT_LT(max_abs(RMatrix(b.topLeftCorner(16, 16) - up)), 1e-10);
    EXPECT_LT(max_abs(RMatrix(b.bottomRightCorner(16, 16) - dn)), 1e-10);
    EXPECT_LT(max_abs(RMatrix(b.topRightCorner(16, 16))), 1e-10);
}

TEST(Covariance, ContinuousAlongPath) {
    DoubledSystem sys = kitaev_doubled(10);
    for (double s : {0.1, 0.5, 0.9}) {
        RMatrix b = path_ground_covariance(sys, s).data();
        double prev = 1e9;
        for (double d : {1e-2, 1e-3, 1e-4}) {
            double change = max_abs(RMatrix(path_ground_covariance(sys, s + d).data() - b));
            EXPECT_LT(change, prev);
            prev = change;
        }
        EXPECT_LT(prev, 1e-3);
    }
}

TEST(Invariants, DoubledKitaevIsEvenEverywhere) {
    InterpolationPath path = uniform_path(DoubledSystem(kitaev_chain(16, {.t = 1.0, .delta = 1.0}, true)), 21);
    InvariantScan scan = invariant_scan(path);
    ASSERT_TRUE(scan.base.majorana_number.has_value());
    EXPECT_EQ(*scan.base.majorana_number, -1);
    EXPECT_TRUE(scan.cancelled);
    for (const auto &r : scan.records) EXPECT_EQ(r.majorana_number.value_or(0), 1) << "s = " << r.s;
}

TEST(Invariants, DoubledChernCancels) {
    QuadraticHamiltonian h = chern_insulator_model(12, 12, {.mass = 1.0}, true);
    InterpolationPath path(DoubledSystem(h), {0.0, 0.5, 1.0});
    InvariantScan scan = invariant_scan(path);
    ASSERT_TRUE(scan.base.nu.has_value());
    EXPECT_NEAR(*scan.base.nu, 1.0, 0.1);
    EXPECT_TRUE(scan.cancelled);
    for (const auto &r : scan.records) EXPECT_LT(std::abs(r.nu.value_or(1.0)), 0.05) << "s = " << r.s;
}

TEST(Invariants, PwaveTrivialLimitHasNoChern) {
    QuadraticHamiltonian h = pplusip_model(16, 16, {.t = 0.2, .delta = 0.2, .mu_chem = 4.0}, true);
    InvariantRecord r = base_invariant(h);
    ASSERT_TRUE(r.nu.has_value());
    EXPECT_LT(std::abs(*r.nu), 0.1);
}

}  // namespace
}  // namespace ffkit
