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

#include <gtest/gtest.h>

#include "ffkit/fit.hpp"
#include "ffkit/hamiltonians.hpp"
#include "support.hpp"

namespace ffkit {
namespace {

WannierBasis chain_wannier(const QuadraticHamiltonian &h) {
    return gxg_wannier_1d(occupied_projector(h), position_operator(h.lattice(), Axis::x), h.lattice());
}

TEST(Localization, RecoversExponentialDecay) {
    Lattice chain = build_chain(101, false);
    CVector psi(101);
    for (int i = 0; i < 101; ++i) psi(i) = std::exp(-std::abs(i - 50) / 3.0);
    LocalizationFit f = localization_length(psi, {50.0, 0.0}, chain);
    EXPECT_NEAR(f.length, 3.0, 0.01);
    EXPECT_GT(f.r2, 0.999);
    EXPECT_FALSE(f.degenerate);
}

TEST(Localization, SingleSiteIsDegenerate) {
    Lattice chain = build_chain(9, false);
    CVector psi = CVector::Zero(9);
    psi(4) = 1.0;
    LocalizationFit f = localization_length(psi, {4.0, 0.0}, chain);
    EXPECT_TRUE(f.degenerate);
    EXPECT_EQ(f.length, 0.0);
    EXPECT_EQ(f.bins, 1);
}

TEST(Localization, EmptyVectorHasNoFit) {
    Lattice chain = build_chain(5, false);
    EXPECT_TRUE(testing::throws_code([&] { localization_length(CVector::Zero(5), {0.0, 0.0}, chain); },
                                     ErrorCode::undefined_fit));
    EXPECT_TRUE(testing::throws_code([&] { localization_length(CVector::Zero(4), {0.0, 0.0}, chain); },
                                     ErrorCode::invalid_size));
}

TEST(GxgWannier, AtomicInsulatorGivesSiteVectors) {
    WannierBasis w = chain_wannier(trivial_model(7, 1.0));
    ASSERT_EQ(w.size(), 7);
    for (int k = 0; k < 7; ++k) {
        EXPECT_NEAR(w.centers(k), k, 1e-12);
        EXPECT_NEAR(std::abs(w.functions(k, k)), 1.0, 1e-12);
        EXPECT_TRUE(w.localization[k].degenerate);
    }
    EXPECT_EQ(w.max_length(), 0.0);
}

TEST(GxgWannier, OrthonormalAndInsideOccupiedSpace) {
    QuadraticHamiltonian h = dimerized_chain(40, {}, false);
    OccupiedProjector p = occupied_projector(h);
    WannierBasis w = gxg_wannier_1d(p, position_operator(h.lattice(), Axis::x), h.lattice());
    EXPECT_EQ(w.size(), 20);
    CMatrix gram = w.functions.adjoint() * w.functions;
    EXPECT_LT(max_abs(CMatrix(gram - CMatrix::Identity(20, 20))), 1e-10);
    EXPECT_LT(max_abs(CMatrix(p.single_particle() * w.functions - w.functions)), 1e-10);
    EXPECT_LT(reconstruction_residual(w, p), 1e-8);
    for (int k = 1; k < w.size(); ++k) EXPECT_LE(w.centers(k - 1), w.centers(k));
}

TEST(GxgWannier, DimerChainLengthIndependentOfSize) {
    std::vector<double> lengths;
    for (int v : {64, 128, 256}) {
        QuadraticHamiltonian h = dimerized_chain(v, {}, false);
        WannierBasis w = chain_wannier(h);
        EXPECT_LT(reconstruction_residual(w, occupied_projector(h)), 1e-8);
        for (const auto &f : w.localization)
            if (!f.degenerate && f.bins >= 3) EXPECT_GT(f.r2, 0.9);
        lengths.push_back(w.max_length());
    }
    EXPECT_GT(lengths.front(), 0.0);
    EXPECT_LT(lengths.back() / lengths.front(), 1.5);
}

TEST(GxgWannier, DisorderedChainStaysLocalized) {
    QuadraticHamiltonian h = dimerized_chain(128, {.disorder = 0.4, .seed = 9}, false);
    WannierBasis w = chain_wannier(h);
    EXPECT_LT(reconstruction_residual(w, occupied_projector(h)), 1e-8);
    EXPECT_LT(w.max_length(), 5.0);
}

TEST(GxgWannier, RejectsUnsupportedInputs) {
    QuadraticHamiltonian ring = dimerized_chain(16, {}, true);
    EXPECT_TRUE(testing::throws_code([&] { chain_wannier(ring); }, ErrorCode::unsupported_model));
    QuadraticHamiltonian plane = chern_insulator_model(3, 3, {.mass = 3.0}, false);
    EXPECT_TRUE(testing::throws_code(
        [&] { gxg_wannier_1d(occupied_projector(plane), position_operator(plane.lattice(), Axis::x), plane.lattice()); },
        ErrorCode::unsupported_model));
    QuadraticHamiltonian paired = kitaev_chain(8, {.mu_chem = 3.0}, false);
    EXPECT_TRUE(testing::throws_code([&] { chain_wannier(paired); }, ErrorCode::unsupported_model));
}

TEST(AlmostCommuting, TrivialProjectorsCommute) {
    Lattice square = build_square(4, 4, false);
    PositionOperator x = position_operator(square, Axis::x), y = position_operator(square, Axis::y);
    CommutatorReport id = almost_commuting_report(CMatrix::Identity(16, 16), x, y);
    EXPECT_LT(id.commutator_norm, 1e-12);
    CMatrix atomic = CMatrix::Zero(16, 16);
    for (int i = 0; i < 16; i += 3) atomic(i, i) = 1.0;
    EXPECT_LT(almost_commuting_report(atomic, x, y).commutator_norm, 1e-12);
}

TEST(AlmostCommuting, TrivialInsulatorCommutatorStaysBounded) {
    std::vector<double> sizes, commutators, gxg;
    for (int l : {8, 12, 16, 20}) {
        CommutatorReport r = almost_commuting_report(chern_insulator_model(l, l, {.mass = 3.0}, false));
        sizes.push_back(l);
        commutators.push_back(r.commutator_norm);
        gxg.push_back(r.gxg_norm);
    }
    LinearFit c = linear_fit(sizes, commutators);
    LinearFit g = linear_fit(sizes, gxg);
    EXPECT_LT(std::abs(c.slope), 0.2);
    EXPECT_GT(g.slope, 0.5);
    EXPECT_GT(g.r2, 0.99);
}

TEST(AlmostCommuting, RejectsPairingAndChains) {
    EXPECT_TRUE(testing::throws_code([] { almost_commuting_report(pplusip_model(3, 3, {}, false)); },
                                     ErrorCode::unsupported_model));
    EXPECT_TRUE(testing::throws_code([] { almost_commuting_report(dimerized_chain(8, {}, false)); },
                                     ErrorCode::unsupported_model));
}

}  // namespace
}  // namespace ffkit
