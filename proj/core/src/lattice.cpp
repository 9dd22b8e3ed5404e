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

#include "ffkit/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "ffkit/error.hpp"

namespace ffkit {

Lattice::Lattice(std::vector<int> extent, std::vector<bool> periodic, int orbitals)
    : extent_(std::move(extent)), periodic_(std::move(periodic)), orbitals_(orbitals) {
    if (extent_.empty() || extent_.size() > 2) {
        fail(ErrorCode::invalid_size, "lattice dimension must be 1 or 2");
    }
    if (periodic_.size() != extent_.size()) {
        fail(ErrorCode::invalid_input, "one boundary flag per axis is required");
    }
    if (orbitals_ < 1) fail(ErrorCode::invalid_size, "at least one orbital per cell");
    size_ = orbitals_;
    for (int e : extent_) {
        if (e < 2) fail(ErrorCode::invalid_size, "every extent must be at least 2, got " + std::to_string(e));
        size_ *= e;
    }
}

bool Lattice::any_periodic() const noexcept {
    return std::any_of(periodic_.begin(), periodic_.end(), [](bool p) { return p; });
}

void Lattice::check_site(int site) const {
    if (site < 0 || site >= size_) {
        fail(ErrorCode::invalid_input, "site " + std::to_string(site) + " outside lattice of size " +
                                           std::to_string(size_));
    }
}

int Lattice::orbital_of(int site) const {
    check_site(site);
    return site % orbitals_;
}

std::array<int, 2> Lattice::cell_of(int site) const {
    check_site(site);
    int cell = site / orbitals_;
    return {cell % extent_[0], cell / extent_[0]};
}

std::array<double, 2> Lattice::position(int site) const {
    auto c = cell_of(site);
    return {static_cast<double>(c[0]), static_cast<double>(c[1])};
}

int Lattice::site_index(int x, int y, int orbital) const {
    int ly = dimension() == 2 ? extent_[1] : 1;
    if (x < 0 || x >= extent_[0] || y < 0 || y >= ly || orbital < 0 || orbital >= orbitals_) {
        fail(ErrorCode::invalid_input, "coordinates outside lattice");
    }
    return (y * extent_[0] + x) * orbitals_ + orbital;
}

int Lattice::distance(int i, int j) const {
    auto a = cell_of(i);
    auto b = cell_of(j);
    int d = 0;
    for (int axis = 0; axis < dimension(); ++axis) {
        int delta = std::abs(a[axis] - b[axis]);
        if (periodic_[axis]) delta = std::min(delta, extent_[axis] - delta);
        d += delta;
    }
    if (orbital_of(i) != orbital_of(j)) d += 1;
    return d;
}

int Lattice::distance_to_set(int site, const std::vector<int> &sites) const {
    if (sites.empty()) fail(ErrorCode::invalid_input, "distance to an empty set");
    int best = std::numeric_limits<int>::max();
    for (int s : sites) best = std::min(best, distance(site, s));
    return best;
}

std::vector<int> Lattice::ball(const std::vector<int> &sites, int radius) const {
    std::vector<int> out;
    for (int i = 0; i < size_; ++i) {
        if (distance_to_set(i, sites) <= radius) out.push_back(i);
    }
    return out;
}

Lattice build_chain(int sites, bool periodic) {
    if (sites < 2) fail(ErrorCode::invalid_size, "a chain needs at least 2 sites");
    return Lattice({sites}, {periodic});
}

Lattice build_square(int lx, int ly, bool periodic, int orbitals) {
    if (lx < 2 || ly < 2) fail(ErrorCode::invalid_size, "square lattice extents must be at least 2");
    return Lattice({lx, ly}, {periodic, periodic}, orbitals);
}

int doubled_metric(const Lattice &lattice, DoubledSite p, DoubledSite q) {
    return lattice.distance(p.base, q.base) + (p.copy == q.copy ? 0 : 1);
}

DoubledSite doubled_site(const Lattice &lattice, int index) {
    int v = lattice.size();
    if (index < 0 || index >= 2 * v) fail(ErrorCode::invalid_input, "doubled site index out of range");
    return index < v ? DoubledSite{index, Copy::up} : DoubledSite{index - v, Copy::down};
}

}  // namespace ffkit
