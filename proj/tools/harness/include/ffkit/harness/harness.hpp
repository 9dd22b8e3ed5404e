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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffkit/error.hpp"
#include "ffkit/flow.hpp"
#include "ffkit/hamiltonians.hpp"

namespace ffkit::harness {

enum class ExperimentKind { path_scan, invariants, boundary, transport, wannier, oracle_suite };

std::string_view to_string(ExperimentKind kind);

struct LatticeConfig {
    std::string shape;  ///< "chain" or "square"
    int sites = 0;
    int lx = 0;
    int ly = 0;
    bool periodic = false;
};

struct ModelConfig {
    std::string name;
    std::map<std::string, double> params;
};

struct BoundaryConfig {
    std::vector<int> region;
    std::vector<int> margins;
    std::string perturbation;  ///< "identical" or "shell-defect"
    double factor = 1.0;
    std::optional<double> xi_prime;
};

struct TransportConfig {
    int steps = 1000;
    FlowVariant variant = FlowVariant::exact;
    /// Filter width in units of 1 / dE.
    double width = 0.0;
    double tolerance = 1e-6;
    std::vector<int> convergence_steps;
    std::vector<double> widths;
    bool generator_profile = false;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::path_scan;
    std::string name;
    std::uint64_t seed = 0;
    std::optional<std::string> output;
    ModelConfig model;
    LatticeConfig lattice;
    int grid = 0;
    double mu = 0.6931471805599453;
    BoundaryConfig boundary;
    TransportConfig transport;
    std::vector<int> sizes;
    /// Key-sorted compact dump of the accepted document; input to the hash.
    std::string canonical;
};

/// Strict parse: unknown keys, wrong types and out-of-range values raise
/// Error(configuration) before anything is computed or written.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path &file);

QuadraticHamiltonian build_model(const ExperimentConfig &config);
/// Same model on a chain of `size` sites or an open size x size square.
QuadraticHamiltonian build_model(const ExperimentConfig &config, int size);

struct RunOptions {
    /// Overrides the config's output directory when non-empty.
    std::filesystem::path output;
    int threads = 1;
};

struct Gate {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation;  ///< "<", "<=", ">", ">=", "=="
    bool pass = false;
};

Gate make_gate(std::string name, double value, std::string relation, double threshold);

struct RunReport {
    std::filesystem::path directory;
    std::vector<Gate> gates;
    std::map<std::string, double> metrics;
    std::vector<std::string> files;
    std::string status;  ///< "pass", "fail" or "error"
    std::optional<std::string> error;
    int exit_code = 0;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitGateFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitCapacity = 3;

int exit_code_for(ErrorCode code);

/// Runs one experiment into {output}/{experiment}/{name}/ and always leaves a
/// manifest.json there, including when the computation throws.
RunReport run(const ExperimentConfig &config, const RunOptions &options);

/// Every reference computation against the library, as seed-{N}.
RunReport oracle_suite(std::uint64_t seed, const RunOptions &options);

/// 64-bit FNV-1a, lower-case hex.
std::string fnv1a_hex(std::string_view bytes);

std::string_view toolkit_version();

}  // namespace ffkit::harness
