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

#include <stdexcept>
#include <vector>

#include "ffkit/oracles.hpp"

namespace ffkit::oracle {

namespace {

double expand(const RMatrix &s, std::vector<int> &rest) {
    if (rest.empty()) return 1.0;
    int first = rest.front();
    double total = 0.0;
    for (std::size_t k = 1; k < rest.size(); ++k) {
        int partner = rest[k];
        std::vector<int> sub;
        for (std::size_t r = 1; r < rest.size(); ++r) {
            if (r != k) sub.push_back(rest[r]);
        }
        double sign = (k % 2 == 1) ? 1.0 : -1.0;
        total += sign * s(first, partner) * expand(s, sub);
    }
    return total;
}

}  // namespace

double matching_pfaffian(const RMatrix &s) {
    if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() > 12)
        throw std::invalid_argument("matching expansion needs an even square matrix of size <= 12");
    std::vector<int> all(s.rows());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
    return expand(s, all);
}

}  // namespace ffkit::oracle
