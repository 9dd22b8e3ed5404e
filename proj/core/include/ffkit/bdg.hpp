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

#include "ffkit/linalg.hpp"

namespace ffkit {

/// Dirac: rows/columns ordered (Psi_1..Psi_V, Psi_1^dag..Psi_V^dag).
/// Majorana: ordered (c_1, c_2, ..., c_2V) with c_{2j-1} = Psi_j + Psi_j^dag and
/// c_{2j} = (Psi_j - Psi_j^dag) / i (one-based labels).
/// Doubled: two copies of V sites ordered (Psi_up, Psi_up^dag, -Psi_dn^dag, Psi_dn),
/// the layout in which the interpolation matrix C_s is written.
enum class Basis { dirac, majorana, doubled };

/// Hermitian single-particle matrix of a quadratic fermion Hamiltonian,
/// H = (1/2) Phi^dag A Phi, where Phi is the Nambu vector of the chosen basis.
class BdGMatrix {
  public:
    BdGMatrix(CMatrix data, Basis basis);

    const CMatrix &data() const noexcept { return data_; }
    Basis basis() const noexcept { return basis_; }
    int size() const noexcept { return static_cast<int>(data_.rows()); }
    int modes() const noexcept { return size() / 2; }

  private:
    CMatrix data_;
    Basis basis_;
};

}  // namespace ffkit
