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
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ffkit/oracles.hpp"

namespace ffkit::oracle {

double fukui_chern(const BlochHamiltonian &h, int occupied, int n) {
    if (n < 2 || occupied < 1) throw std::invalid_argument("bad momentum grid");
    const double step = 2.0 * std::numbers::pi / n;
    std::vector<CMatrix> frames(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(h(x * step, y * step));
            frames[x * n + y] = es.eigenvectors().leftCols(occupied);
        }
    }
    auto at = [&](int x, int y) -> const CMatrix & { return frames[((x + n) % n) * n + (y + n) % n]; };
    auto link = [&](int x, int y, int dx, int dy) {
        cplx d = (at(x, y).adjoint() * at(x + dx, y + dy)).determinant();
        return d / std::abs(d);
    };
    double total = 0.0;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            cplx loop = link(x, y, 1, 0) * link(x + 1, y, 0, 1) / (link(x, y + 1, 1, 0) * link(x, y, 0, 1));
            total += std::arg(loop);
        }
    }
    return total / (2.0 * std::numbers::pi);
}

BlochHamiltonian two_band_chern_bloch(double mass, double hopping) {
    return [mass, hopping](double kx, double ky) {
        const cplx i(0.0, 1.0);
        double dx = hopping * std::sin(kx);
        double dy = hopping * std::sin(ky);
        double dz = mass + hopping * (std::cos(kx) + std::cos(ky));
        CMatrix m(2, 2);
        m << dz, dx - i * dy, dx + i * dy, -dz;
        return m;
    };
}

}  // namespace ffkit::oracle
