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

#pragma once

#include <random>

#include "ffkit/error.hpp"
#include "ffkit/hamiltonians.hpp"
#include "ffkit/lattice.hpp"
#include "ffkit/linalg.hpp"

namespace ffkit::testing {

/// True when fn throws an ffkit::Error carrying `expected`.
template <typename Fn>
bool throws_code(Fn &&fn, ErrorCode expected) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code() == expected;
    }
    return false;
}

inline CMatrix random_complex(int rows, int cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    CMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

inline CMatrix random_hermitian(int n, std::mt19937_64 &rng) {
    CMatrix m = random_complex(n, n, rng);
    return 0.5 * (m + m.adjoint());
}

inline RMatrix random_antisymmetric(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    RMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = g(rng);
    return m - m.transpose();
}

/// Random all-to-all quadratic Hamiltonian with pairing on a chain of `sites`.
inline QuadraticHamiltonian random_hamiltonian(int sites, std::mt19937_64 &rng, bool pairing = true) {
    CMatrix hop = random_hermitian(sites, rng);
    CMatrix pair = CMatrix::Zero(sites, sites);
    if (pairing) {
        CMatrix p = random_complex(sites, sites, rng);
        pair = 0.5 * (p - p.transpose());
    }
    return QuadraticHamiltonian(build_chain(sites, false), hop, pair);
}

}  // namespace ffkit::testing
