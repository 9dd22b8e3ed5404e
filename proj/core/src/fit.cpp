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

#include "ffkit/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ffkit/error.hpp"

namespace ffkit {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) fail(ErrorCode::invalid_input, "fit abscissa and ordinate differ in length");
    const double n = static_cast<double>(x.size());
    if (x.size() < 2) fail(ErrorCode::undefined_fit, "a line needs at least two points");
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) fail(ErrorCode::undefined_fit, "all abscissae coincide");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += r * r;
    }
    fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.points = static_cast<int>(x.size());
    return fit;
}

std::vector<DecayRecord> decay_profile(const CMatrix &m, const std::function<int(int, int)> &distance) {
    std::map<int, double> best;
    for (Eigen::Index q = 0; q < m.cols(); ++q) {
        for (Eigen::Index p = 0; p < m.rows(); ++p) {
            int d = distance(static_cast<int>(p), static_cast<int>(q));
            double &slot = best[d];
            slot = std::max(slot, std::abs(m(p, q)));
        }
    }
    std::vector<DecayRecord> out;
    out.reserve(best.size());
    for (auto [d, v] : best) out.push_back({d, v});
    return out;
}

DecayFit fit_decay(std::vector<DecayRecord> profile, double floor, int min_distance) {
    std::sort(profile.begin(), profile.end(), [](const auto &a, const auto &b) { return a.distance < b.distance; });
    std::vector<double> x, y;
    double envelope = 0.0;
    for (auto it = profile.rbegin(); it != profile.rend(); ++it) {
        envelope = std::max(envelope, it->max_abs);
        if (it->distance >= min_distance && envelope > floor) {
            x.push_back(it->distance);
            y.push_back(std::log(envelope));
        }
    }
    LinearFit line = linear_fit(x, y);
    DecayFit fit;
    fit.profile = std::move(profile);
    fit.xi = line.slope < 0.0 ? -1.0 / line.slope : std::numeric_limits<double>::infinity();
    fit.r2 = line.r2;
    fit.points = line.points;
    return fit;
}

}  // namespace ffkit
