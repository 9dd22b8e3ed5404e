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

#include <array>
#include <cstddef>
#include <vector>

namespace ffkit {

/// Bravais lattice in one or two dimensions with an optional multi-orbital
/// basis. Sites are ordered row-major: x fastest, then y, with the orbital
/// index innermost, i.e. site = (y * Lx + x) * orbitals + orbital.
///
/// The metric is the graph distance between cells (wrapping on periodic
/// axes) plus one when two sites in the same or different cells carry
/// different orbital labels. With a single orbital this is the plain
/// nearest-neighbour graph distance.
class Lattice {
  public:
    Lattice(std::vector<int> extent, std::vector<bool> periodic, int orbitals = 1);

    int size() const noexcept { return size_; }
    int dimension() const noexcept { return static_cast<int>(extent_.size()); }
    int extent(int axis) const { return extent_.at(axis); }
    bool periodic(int axis) const { return periodic_.at(axis); }
    bool any_periodic() const noexcept;
    int orbitals() const noexcept { return orbitals_; }
    int cells() const noexcept { return size_ / orbitals_; }

    int orbital_of(int site) const;
    /// Integer cell coordinates (x, y); y is zero on chains.
    std::array<int, 2> cell_of(int site) const;
    /// Position in lattice units; both orbitals of a cell share it.
    std::array<double, 2> position(int site) const;
    int site_index(int x, int y = 0, int orbital = 0) const;

    int distance(int i, int j) const;

    /// Sites whose distance to the set is at most `radius`, in ascending order.
    std::vector<int> ball(const std::vector<int> &sites, int radius) const;
    /// Distance from a site to the closest member of a set.
    int distance_to_set(int site, const std::vector<int> &sites) const;

    bool operator==(const Lattice &other) const = default;

  private:
    void check_site(int site) const;

    std::vector<int> extent_;
    std::vector<bool> periodic_;
    int orbitals_ = 1;
    int size_ = 0;
};

Lattice build_chain(int sites, bool periodic);
Lattice build_square(int lx, int ly, bool periodic, int orbitals = 1);

enum class Copy { up, down };

struct DoubledSite {
    int base = 0;
    Copy copy = Copy::up;
};

/// dist'((i,a),(j,b)) = dist(i,j) + (1 - delta_ab).
int doubled_metric(const Lattice &lattice, DoubledSite p, DoubledSite q);

/// Doubled sites are ordered as all up-copy sites followed by all down-copy sites.
inline int doubled_index(const Lattice &lattice, DoubledSite p) {
    return p.copy == Copy::up ? p.base : lattice.size() + p.base;
}
DoubledSite doubled_site(const Lattice &lattice, int index);

}  // namespace ffkit
