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

#include <functional>
#include <span>
#include <vector>

#include "ffkit/linalg.hpp"

namespace ffkit {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int points = 0;
};

/// Ordinary least squares y = slope * x + intercept. Needs two distinct x values.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

struct DecayRecord {
    int distance = 0;
    double max_abs = 0.0;
};

struct DecayFit {
    std::vector<DecayRecord> profile;
    /// -1 / slope of the log tail envelope against distance.
    double xi = 0.0;
    double r2 = 0.0;
    int points = 0;
};

/// Largest |m_pq| at every distance d(p, q), sorted by distance.
std::vector<DecayRecord> decay_profile(const CMatrix &m, const std::function<int(int, int)> &distance);

/// Exponential fit of the tail envelope max_{d' >= d} max_abs(d') over
/// distances >= min_distance where the envelope exceeds floor. The envelope
/// is what an exponential bound constrains; isolated zeros and parity
/// oscillations in the raw profile do not enter. Throws undefined-fit when
/// fewer than two records qualify.
DecayFit fit_decay(std::vector<DecayRecord> profile, double floor, int min_distance = 1);

}  // namespace ffkit
