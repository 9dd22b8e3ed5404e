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

#include "ffkit/gaussian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "ffkit/error.hpp"
#include "ffkit/flow.hpp"

namespace ffkit {

namespace {

constexpr double kWilliamsonSlack = 1e-8;

/// c_index |s> = phase[s] |target[s]>, with mode 0 on the lowest bit and
/// Jordan-Wigner strings running over the lower modes.
struct MajoranaAction {
    std::vector<std::uint32_t> target;
    std::vector<cplx> phase;
};

MajoranaAction majorana_action(int modes, int index) {
    const std::uint32_t dim = 1u << modes;
    const int mode = index / 2;
    const std::uint32_t bit = 1u << mode;
    MajoranaAction act{std::vector<std::uint32_t>(dim), std::vector<cplx>(dim)};
    for (std::uint32_t s = 0; s < dim; ++s) {
        double jw = (std::popcount(s & (bit - 1)) % 2 == 0) ? 1.0 : -1.0;
        act.target[s] = s ^ bit;
        if (index % 2 == 0) {
            act.phase[s] = jw;
        } else {
            act.phase[s] = (s & bit) ? cplx(0.0, -jw) : cplx(0.0, jw);
        }
    }
    return act;
}

std::vector<MajoranaAction> majorana_actions(int modes) {
    std::vector<MajoranaAction> out;
    out.reserve(2 * modes);
    for (int a = 0; a < 2 * modes; ++a) out.push_back(majorana_action(modes, a));
    return out;
}

using RowMajorC = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// (sum_a coeff_a c_a) * m. Both Majoranas of mode j send basis state s to
/// s ^ (1 << j), so each mode contributes one scaled row move per row.
RowMajorC apply_combination(const std::vector<MajoranaAction> &ops, const RVector &coeff, const RowMajorC &m) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    RowMajorC out = RowMajorC::Zero(rows, cols);
    for (std::size_t mode = 0; 2 * mode < ops.size(); ++mode) {
        const double ue = coeff(static_cast<Eigen::Index>(2 * mode));
        const double uo = coeff(static_cast<Eigen::Index>(2 * mode + 1));
        if (ue == 0.0 && uo == 0.0) continue;
        const auto &even = ops[2 * mode], &odd = ops[2 * mode + 1];
        for (Eigen::Index s = 0; s < rows; ++s) {
            const cplx w = ue * even.phase[s] + uo * odd.phase[s];
            const double wr = w.real(), wi = w.imag();
            const double *src = reinterpret_cast<const double *>(m.data() + s * cols);
            double *dst = reinterpret_cast<double *>(out.data() + even.target[s] * cols);
            for (Eigen::Index c = 0; c < 2 * cols; c += 2) {
                const double xr = src[c], xi = src[c + 1];
                dst[c] += wr * xr - wi * xi;
                dst[c + 1] += wr * xi + wi * xr;
            }
        }
    }
    return out;
}

int modes_of_dimension(Eigen::Index dim) {
    if (dim <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(dim)))
        fail(ErrorCode::invalid_size, "density matrix dimension must be a power of two");
    return std::countr_zero(static_cast<std::uint64_t>(dim));
}

void check_covariance_shape(const RMatrix &b) {
    if (b.rows() != b.cols() || b.rows() == 0 || b.rows() % 2 != 0)
        fail(ErrorCode::invalid_size, "covariance must be square with even, nonzero dimension");
    if (b.rows() / 2 > kMaxReducedSites)
        fail(ErrorCode::capacity_exceeded, "reduced state on more than " + std::to_string(kMaxReducedSites) +
                                               " sites");
    if (antisymmetry_residual(b) > 1e-10 * std::max(1.0, max_abs(b)))
        fail(ErrorCode::invalid_input, "covariance is not antisymmetric");
}

struct NormalForm {
    RMatrix rotation;  // columns: c'_a = sum_b rotation(b, a) c_b
    RVector nu;
};

/// B = O (+) nu_k J O^T from the real Schur form, which is block diagonal for
/// normal matrices. Zero eigenvalues appear as 1x1 blocks and are paired up.
NormalForm normal_form(const RMatrix &b) {
    const Eigen::Index n = b.rows();
    Eigen::RealSchur<RMatrix> schur(b);
    const RMatrix &t = schur.matrixT();
    const RMatrix &u = schur.matrixU();
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    std::vector<Eigen::Index> singles;
    for (Eigen::Index k = 0; k < n;) {
        if (k + 1 < n && t(k + 1, k) != 0.0) {
            pairs.emplace_back(k, k + 1);
            k += 2;
        } else {
            singles.push_back(k);
            k += 1;
        }
    }
    for (std::size_t k = 0; k + 1 < singles.size(); k += 2) pairs.emplace_back(singles[k], singles[k + 1]);
    NormalForm nf{RMatrix(n, n), RVector(n / 2)};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [p, q] = pairs[k];
        nf.rotation.col(2 * k) = u.col(p);
        nf.rotation.col(2 * k + 1) = u.col(q);
        nf.nu(k) = 0.5 * (t(p, q) - t(q, p));
    }
    return nf;
}

}  // namespace

RMatrix restrict_covariance(const MajoranaCovariance &b, const std::vector<int> &subset) {
    if (subset.empty()) fail(ErrorCode::invalid_input, "subset is empty");
    std::vector<Eigen::Index> idx;
    std::vector<int> seen(b.modes(), 0);
    for (int site : subset) {
        if (site < 0 || site >= b.modes()) fail(ErrorCode::invalid_input, "subset site outside the system");
        if (seen[site]++) fail(ErrorCode::invalid_input, "subset repeats a site");
        idx.push_back(2 * site);
        idx.push_back(2 * site + 1);
    }
    return b.data()(idx, idx);
}

RVector williamson_values(const RMatrix &b) {
    if (b.rows() != b.cols() || b.rows() % 2 != 0) fail(ErrorCode::invalid_size, "covariance must be even and square");
    CMatrix ib = cplx(0.0, 1.0) * b.cast<cplx>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(ib, Eigen::EigenvaluesOnly);
    return es.eigenvalues().tail(b.rows() / 2);
}

CMatrix rdm_from_covariance(const RMatrix &b) {
    check_covariance_shape(b);
    const int modes = static_cast<int>(b.rows() / 2);
    double largest = williamson_values(b).maxCoeff();
    if (largest > 1.0 + kWilliamsonSlack)
        fail(ErrorCode::invalid_input, "covariance eigenvalue " + std::to_string(largest) + " exceeds one");
    NormalForm nf = normal_form(b);
    const auto ops = majorana_actions(modes);
    const Eigen::Index dim = Eigen::Index{1} << modes;
    // The factors act from the left, so columns evolve independently; a
    // block of 32 columns keeps the working set in cache.
    constexpr Eigen::Index kBlock = 32;
    CMatrix rho(dim, dim);
    for (Eigen::Index first = 0; first < dim; first += kBlock) {
        const Eigen::Index width = std::min(kBlock, dim - first);
        RowMajorC x = RowMajorC::Zero(dim, width);
        for (Eigen::Index c = 0; c < width; ++c) x(first + c, c) = 1.0;
        for (int k = 0; k < modes; ++k) {
            double nu = std::clamp(nf.nu(k), -1.0, 1.0);
            if (nu == 0.0) {
                x *= 0.5;
                continue;
            }
            RowMajorC pair = apply_combination(ops, nf.rotation.col(2 * k),
                                               apply_combination(ops, nf.rotation.col(2 * k + 1), x));
            x = 0.5 * (x + cplx(0.0, nu) * pair);
        }
        rho.middleCols(first, width) = x;
    }
    return 0.5 * (rho + rho.adjoint());
}

RMatrix covariance_from_rdm(const CMatrix &rho) {
    if (rho.rows() != rho.cols()) fail(ErrorCode::invalid_size, "density matrix must be square");
    const int modes = modes_of_dimension(rho.rows());
    const auto ops = majorana_actions(modes);
    RMatrix b = RMatrix::Zero(2 * modes, 2 * modes);
    for (int j = 0; j < 2 * modes; ++j) {
        for (int k = j + 1; k < 2 * modes; ++k) {
            cplx tr = 0.0;
            for (Eigen::Index t = 0; t < rho.rows(); ++t) {
                std::uint32_t mid = ops[k].target[t];
                std::uint32_t s = ops[j].target[mid];
                tr += ops[j].phase[mid] * ops[k].phase[t] * rho(t, s);
            }
            b(j, k) = (cplx(0.0, 1.0) * tr).real();
            b(k, j) = -b(j, k);
        }
    }
    return b;
}

CMatrix majorana_matrix(int modes, int index) {
    if (modes < 1 || modes > kMaxReducedSites) fail(ErrorCode::capacity_exceeded, "too many modes for a dense operator");
    if (index < 0 || index >= 2 * modes) fail(ErrorCode::invalid_input, "Majorana index out of range");
    MajoranaAction act = majorana_action(modes, index);
    const Eigen::Index dim = Eigen::Index{1} << modes;
    CMatrix m = CMatrix::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dim; ++s) m(act.target[s], s) = act.phase[s];
    return m;
}

GaussianReducedState reduced_state(const MajoranaCovariance &b, const std::vector<int> &subset) {
    if (static_cast<int>(subset.size()) > kMaxReducedSites)
        fail(ErrorCode::capacity_exceeded, "reduced state on more than " + std::to_string(kMaxReducedSites) +
                                               " sites");
    GaussianReducedState out{subset, restrict_covariance(b, subset), {}};
    out.rho = rdm_from_covariance(out.covariance);
    return out;
}

double trace_norm_distance(const CMatrix &rho, const CMatrix &sigma) {
    if (rho.rows() != rho.cols() || sigma.rows() != sigma.cols() || rho.rows() != sigma.rows())
        fail(ErrorCode::invalid_size, "density matrices differ in dimension");
    CMatrix d = rho - sigma;
    d = 0.5 * (d + d.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(d, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

void check_agreement(const QuadraticHamiltonian &a, const QuadraticHamiltonian &b, const std::vector<int> &region) {
    if (!(a.lattice() == b.lattice())) fail(ErrorCode::configuration, "systems live on different lattices");
    for (int i : region) {
        if (i < 0 || i >= a.sites()) fail(ErrorCode::configuration, "region site outside the lattice");
        bool same = a.hop().row(i) == b.hop().row(i) && a.hop().col(i) == b.hop().col(i) &&
                    a.pair().row(i) == b.pair().row(i) && a.pair().col(i) == b.pair().col(i);
        if (!same)
            fail(ErrorCode::configuration, "systems differ on site " + std::to_string(i) + " inside the protected region");
    }
}

BoundaryExperiment boundary_sensitivity(const QuadraticHamiltonian &base, const QuadraticHamiltonian &perturbed,
                                        const std::vector<int> &subset, const std::vector<int> &margins,
                                        const BoundaryOptions &options) {
    return boundary_sensitivity(
        base, [&perturbed](int) { return perturbed; }, subset, margins, options);
}

BoundaryExperiment boundary_sensitivity(const QuadraticHamiltonian &base, const PerturbationFamily &perturbed,
                                        const std::vector<int> &subset, const std::vector<int> &margins,
                                        const BoundaryOptions &options) {
    if (margins.empty()) fail(ErrorCode::invalid_input, "no margins requested");
    for (int l : margins) {
        if (l < 0) fail(ErrorCode::invalid_parameter, "margins must be nonnegative");
    }
    BoundaryExperiment ex;
    ex.subset = subset;
    const Lattice &lat = base.lattice();
    GaussianReducedState reference = reduced_state(ground_covariance(base), subset);

    ex.s1 = locality_norm(base, options.mu);
    ex.v = 2.0 * ex.s1 / options.mu;
    ex.delta_e = spectral_gap(assemble_bdg(base));
    ex.xi_prime = options.xi_prime ? *options.xi_prime : measured_flow_length(DoubledSystem(base));

    const double scale = static_cast<double>(subset.size()) * ex.s1 * std::pow(ex.xi_prime, lat.dimension());
    std::vector<double> shape;
    std::vector<double> xs, ys;
    for (int l : margins) {
        QuadraticHamiltonian other = perturbed(l);
        check_agreement(base, other, lat.ball(subset, l));
        GaussianReducedState state = reduced_state(ground_covariance(other), subset);
        double d = trace_norm_distance(reference.rho, state.rho);
        ex.records.push_back({l, d, 0.0});
        shape.push_back(scale * std::sqrt(l / (ex.v * ex.delta_e)) * std::exp(-l / ex.xi_prime));
        if (d > options.floor) {
            xs.push_back(l);
            ys.push_back(std::log(d));
            if (shape.back() > 0.0) ex.fitted_constant = std::max(ex.fitted_constant, d / shape.back());
        }
    }
    for (std::size_t k = 0; k < ex.records.size(); ++k) ex.records[k].envelope = ex.fitted_constant * shape[k];

    if (xs.empty()) {
        ex.decays = true;
    } else if (std::any_of(xs.begin(), xs.end(), [&](double x) { return x != xs.front(); })) {
        ex.fit = linear_fit(xs, ys);
        ex.decays = ex.fit->slope < 0.0 && ex.fit->r2 > 0.9;
    }
    return ex;
}

PerturbationFamily shell_defect(const QuadraticHamiltonian &base, const std::vector<int> &subset, double factor) {
    std::vector<int> dist(base.sites());
    for (int i = 0; i < base.sites(); ++i) dist[i] = base.lattice().distance_to_set(i, subset);
    return [base, dist = std::move(dist), factor](int margin) {
        CMatrix hop = base.hop();
        CMatrix pair = base.pair();
        for (int i = 0; i < base.sites(); ++i) {
            for (int j = 0; j < base.sites(); ++j) {
                if (std::min(dist[i], dist[j]) == margin + 1 && std::max(dist[i], dist[j]) == margin + 2) {
                    hop(i, j) *= factor;
                    pair(i, j) *= factor;
                }
            }
        }
        return QuadraticHamiltonian(base.lattice(), std::move(hop), std::move(pair));
    };
}

}  // namespace ffkit
