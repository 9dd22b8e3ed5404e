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

#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <string>

#include "context.hpp"
#include "ffkit/doubling.hpp"
#include "ffkit/gaussian.hpp"
#include "ffkit/harness/parallel.hpp"
#include "ffkit/invariants.hpp"
#include "ffkit/oracles.hpp"

namespace ffkit::harness::detail {

namespace {

struct Comparison {
    std::string oracle;
    std::string label;
    double tolerance = 0.0;
    std::function<double()> deviation;
};

CMatrix gaussian_matrix(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    CMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

/// Random hopping and pairing on an open chain, redrawn until the BdG gap
/// clears 0.05 so that the ground state is unique.
BdGMatrix random_gapped_bdg(int sites, std::mt19937_64 &rng) {
    for (;;) {
        CMatrix h = gaussian_matrix(sites, rng), d = gaussian_matrix(sites, rng);
        QuadraticHamiltonian q(build_chain(sites, false), 0.5 * (h + h.adjoint()), 0.5 * (d - d.transpose()));
        BdGMatrix a = assemble_bdg(q);
        if (spectral_gap(a) > 0.05) return a;
    }
}

RMatrix random_antisymmetric(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    RMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = g(rng);
    return m - m.transpose();
}

std::vector<Comparison> build_comparisons(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Comparison> out;

    for (int n : {2, 4, 6, 8}) {
        RMatrix s = random_antisymmetric(n, rng);
        out.push_back({"matching-pfaffian", "n=" + std::to_string(n), 1e-10, [s] {
                           double ref = oracle::matching_pfaffian(s);
                           return std::abs(pfaffian(s) - ref) / std::max(1.0, std::abs(ref));
                       }});
    }

    auto fock_case = std::make_shared<const BdGMatrix>(random_gapped_bdg(4, rng));
    auto ground = [fock_case] { return oracle::fock_ground_state(fock_case->data()); };
    out.push_back({"fock-diagonalization", "ground-covariance V=4", 1e-8, [=] {
                       auto g = ground();
                       return max_abs(RMatrix(ground_covariance(*fock_case).data() - oracle::fock_covariance(g.state, 4)));
                   }});
    out.push_back({"fock-diagonalization", "gap V=4", 1e-9,
                   [=] { return std::abs(spectral_gap(*fock_case) - ground().gap); }});
    out.push_back({"fock-diagonalization", "correlators V=4", 1e-8, [=] {
                       auto g = ground();
                       DiracCorrelations d = dirac_correlations(ground_covariance(*fock_case));
                       return std::max(max_abs(CMatrix(d.normal - oracle::fock_normal_correlator(g.state, 4))),
                                       max_abs(CMatrix(d.anomalous - oracle::fock_anomalous_correlator(g.state, 4))));
                   }});
    for (std::vector<int> y : {std::vector<int>{0, 2}, {3, 1, 2}}) {
        std::string label = "reduced-state V=4 Y=";
        for (int i : y) label += std::to_string(i);
        out.push_back({"fock-diagonalization", label, 1e-8, [=] {
                           auto g = ground();
                           CMatrix exact = oracle::fock_reduced_density_matrix(g.state, 4, y);
                           return max_abs(CMatrix(reduced_state(ground_covariance(*fock_case), y).rho - exact));
                       }});
    }

    const KitaevParams topological{.t = 1.0, .delta = 0.7, .mu_chem = 0.5};
    out.push_back({"fock-diagonalization", "doubled gap V=3 s=0.5", 1e-9, [=] {
                       DoubledSystem sys(kitaev_chain(3, topological, true));
                       auto g = oracle::fock_ground_state(doubled_to_dirac(path_matrix(sys, 0.5)).data());
                       return std::abs(g.gap - sys.delta_e());
                   }});
    out.push_back({"fock-diagonalization", "doubled endpoint V=3", 1e-10, [=] {
                       DoubledSystem sys(kitaev_chain(3, topological, true));
                       auto g = oracle::fock_ground_state(doubled_to_dirac(path_matrix(sys, 1.0)).data());
                       return max_abs(RMatrix(oracle::fock_covariance(g.state, 6) - oracle::product_state_covariance(3)));
                   }});

    out.push_back({"two-mode-product", "endpoint covariance V=8", 1e-10, [=] {
                       DoubledSystem sys(kitaev_chain(8, topological, true));
                       return max_abs(RMatrix(path_ground_covariance(sys, 1.0).data() - oracle::product_state_covariance(8)));
                   }});
    out.push_back({"two-mode-product", "correlators V=4", 1e-12, [] {
                       auto two = oracle::two_mode_product_state();
                       MajoranaCovariance b = product_ground_state_covariance(4);
                       RVector n = site_occupations(b);
                       DiracCorrelations d = dirac_correlations(b);
                       double dev = 0.0;
                       for (int i = 0; i < 4; ++i) {
                           dev = std::max({dev, std::abs(n(i) - two.n_up), std::abs(n(4 + i) - two.n_down),
                                           std::abs(d.anomalous(i, 4 + i) - two.pair)});
                       }
                       return dev;
                   }});

    for (double mass : {1.0, -1.0, 3.0}) {
        out.push_back({"tknn-integral", "real-space chern m=" + format_number(mass) + " L=20", 0.1, [mass] {
                           double band = oracle::fukui_chern(oracle::two_band_chern_bloch(mass, 1.0), 1, 40);
                           QuadraticHamiltonian h = chern_insulator_model(20, 20, {.mass = mass, .hopping = 1.0}, true);
                           ChernResult nu = real_space_chern(occupied_projector(h), disc_partition(h.lattice()));
                           return std::abs(nu.value - std::round(band)) + std::abs(band - std::round(band));
                       }});
    }
    return out;
}

}  // namespace

void run_oracle_suite(std::uint64_t seed, Context &ctx) {
    std::vector<Comparison> comparisons = build_comparisons(seed);
    std::vector<double> deviations(comparisons.size());
    parallel_for(comparisons.size(), ctx.threads(), [&](std::size_t k) { deviations[k] = comparisons[k].deviation(); });
    ctx.csv("comparisons.csv", {"oracle", "case", "deviation", "tolerance", "pass"}, [&](CsvWriter &w) {
        for (std::size_t k = 0; k < comparisons.size(); ++k) {
            const Comparison &c = comparisons[k];
            w.cell(c.oracle).cell(c.label).cell(deviations[k]).cell(c.tolerance);
            w.cell(deviations[k] <= c.tolerance ? 1 : 0);
            w.end_row();
        }
    });
    for (std::size_t k = 0; k < comparisons.size(); ++k)
        ctx.gate(comparisons[k].oracle + ": " + comparisons[k].label, deviations[k], "<=", comparisons[k].tolerance);
}

}  // namespace ffkit::harness::detail
