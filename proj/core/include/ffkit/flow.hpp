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

#include <optional>
#include <vector>

#include "ffkit/doubling.hpp"
#include "ffkit/fit.hpp"
#include "ffkit/lattice.hpp"
#include "ffkit/linalg.hpp"

namespace ffkit {

enum class FlowVariant { exact, filtered };

/// Hermitian generator K of the negative-energy projector along a path:
/// dP = -i [K, P] dparam.
struct FlowGenerator {
    double parameter = 0.0;
    CMatrix k;
    FlowVariant variant = FlowVariant::exact;
    /// Filter time T; zero for the exact variant.
    double width = 0.0;
};

/// K = i [dP, P]. In the eigenbasis of C only the blocks linking negative and
/// positive energies survive: K_nm = -i dC_nm / (lambda_n - lambda_m).
FlowGenerator exact_flow_generator(const CMatrix &c, const CMatrix &dc);

/// Same construction over every pair of distinct levels with the weight
///   w(omega) = -(1 - exp(-omega^2 T^2 / 2)) / omega,
/// which is odd, regular at omega = 0, and equals -1/omega up to
/// exp(-gap^2 T^2 / 2) across the gap. Converges to the exact transport as T grows.
FlowGenerator filtered_flow_generator(const CMatrix &c, const CMatrix &dc, double delta_e, double width);

/// Generator along the doubled family at angle theta = asin(s).
FlowGenerator path_flow_generator(const DoubledSystem &sys, double theta, FlowVariant variant, double width = 0.0);

struct TransportResult {
    int steps = 0;
    FlowVariant variant = FlowVariant::exact;
    double width = 0.0;
    /// s after each step (descending) and the spectral-norm error of the
    /// transported projector against the exact one at that s.
    std::vector<double> s_grid;
    std::vector<double> errors;
    double final_error = 0.0;
    /// ||U^dag U - 1|| of the accumulated propagator.
    double unitarity_residual = 0.0;
    /// Largest ||P^2 - P|| and |tr P - tr P(start)| seen along the flow.
    double idempotency_residual = 0.0;
    double trace_drift = 0.0;
};

/// Transports the negative projector of C from s_from to s_to with the
/// midpoint exponential rule, uniform in theta = asin(s) where the family is
/// smooth. A zero-length path returns the starting projector untouched.
TransportResult transport_between(const DoubledSystem &sys, double s_from, double s_to, int steps, FlowVariant variant,
                                  double width = 0.0);

/// s = 1 (product state) to s = 0 (the doubled base ground state).
TransportResult transport_projector(const InterpolationPath &path, int steps, FlowVariant variant, double width = 0.0);

struct GeneratorLocality {
    std::vector<DecayRecord> profile;
    std::optional<DecayFit> fit;
    /// Correlation scale 2 v / dE + mu of the base system, an upper-bound reference.
    double reference_length = 0.0;
};

/// Largest |K_pq| at each doubled distance dist' for a doubled-basis
/// generator (4V rows: site q mod V, copy q / 2V), with an exponential fit
/// over distances >= 1 when at least two records exceed 1e-12 max|K|.
std::vector<DecayRecord> generator_profile(const FlowGenerator &k, const Lattice &lattice);
GeneratorLocality generator_locality_profile(const FlowGenerator &k, const DoubledSystem &sys, double mu);

/// Fitted decay length of the exact generator at the given s.
double measured_flow_length(const DoubledSystem &sys, double s = 0.0);

}  // namespace ffkit
