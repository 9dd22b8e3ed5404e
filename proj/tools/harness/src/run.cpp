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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "context.hpp"
#include "json.hpp"

#ifndef FFKIT_VERSION
#define FFKIT_VERSION "0.0.0"
#endif

namespace ffkit::harness {

namespace {

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::ordered_json number_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

void write_manifest(const ExperimentConfig &config, const RunOptions &options, const RunReport &report,
                    const std::string &started) {
    nlohmann::ordered_json m;
    m["toolkit"] = "ffkit";
    m["version"] = toolkit_version();
    m["experiment"] = to_string(config.kind);
    m["name"] = config.name;
    m["config_hash"] = fnv1a_hex(config.canonical);
    m["seed"] = config.seed;
    m["threads"] = options.threads;
    m["started"] = started;
    m["finished"] = utc_now();
    m["status"] = report.status;
    m["exit_code"] = report.exit_code;
    m["error"] = report.error ? nlohmann::ordered_json(*report.error) : nlohmann::ordered_json(nullptr);
    auto &gates = m["gates"] = nlohmann::ordered_json::array();
    for (const Gate &g : report.gates) {
        gates.push_back({{"name", g.name},
                         {"value", number_or_null(g.value)},
                         {"relation", g.relation},
                         {"threshold", g.threshold},
                         {"pass", g.pass}});
    }
    auto &metrics = m["metrics"] = nlohmann::ordered_json::object();
    for (const auto &[k, v] : report.metrics) metrics[k] = number_or_null(v);
    m["files"] = report.files;
    m["config"] = nlohmann::ordered_json::parse(config.canonical);
    detail::write_file(report.directory / "manifest.json", m.dump(2) + "\n");
}

void dispatch(const ExperimentConfig &config, detail::Context &ctx) {
    switch (config.kind) {
    case ExperimentKind::path_scan: detail::run_path_scan(config, ctx); break;
    case ExperimentKind::invariants: detail::run_invariants(config, ctx); break;
    case ExperimentKind::boundary: detail::run_boundary(config, ctx); break;
    case ExperimentKind::transport: detail::run_transport(config, ctx); break;
    case ExperimentKind::wannier: detail::run_wannier(config, ctx); break;
    case ExperimentKind::oracle_suite: detail::run_oracle_suite(config.seed, ctx); break;
    }
}

}  // namespace

namespace detail {

void write_file(const std::filesystem::path &path, const std::string &body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace detail

Gate make_gate(std::string name, double value, std::string relation, double threshold) {
    bool pass = false;
    if (relation == "<") pass = value < threshold;
    else if (relation == "<=") pass = value <= threshold;
    else if (relation == ">=") pass = value >= threshold;
    else if (relation == ">") pass = value > threshold;
    else if (relation == "==") pass = value == threshold;
    else throw std::invalid_argument("unknown gate relation " + relation);
    return {std::move(name), value, threshold, std::move(relation), pass};
}

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::configuration: return kExitConfigError;
    case ErrorCode::capacity_exceeded: return kExitCapacity;
    default: return kExitGateFailure;
    }
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string_view toolkit_version() { return FFKIT_VERSION; }

RunReport run(const ExperimentConfig &config, const RunOptions &options) {
    std::filesystem::path root = options.output;
    if (root.empty()) root = config.output.value_or("results");
    RunReport report;
    report.directory = root / std::string(to_string(config.kind)) / config.name;
    const std::string started = utc_now();
    try {
        std::filesystem::create_directories(report.directory);
        detail::Context ctx(report.directory, std::max(options.threads, 1), report);
        dispatch(config, ctx);
        bool all = std::all_of(report.gates.begin(), report.gates.end(), [](const Gate &g) { return g.pass; });
        report.status = all ? "pass" : "fail";
        report.exit_code = all ? kExitPass : kExitGateFailure;
        if (!all) {
            std::string failed;
            for (const Gate &g : report.gates)
                if (!g.pass) failed += (failed.empty() ? "" : ", ") + g.name;
            report.error = "gate failure: " + failed;
        }
    } catch (const Error &e) {
        report.status = "error";
        report.error = e.what();
        report.exit_code = exit_code_for(e.code());
    } catch (const std::exception &e) {
        report.status = "error";
        report.error = e.what();
        report.exit_code = kExitGateFailure;
    }
    try {
        write_manifest(config, options, report, started);
    } catch (const std::exception &e) {
        report.status = "error";
        report.error = std::string("manifest not written: ") + e.what();
        if (report.exit_code == kExitPass) report.exit_code = kExitGateFailure;
    }
    return report;
}

RunReport oracle_suite(std::uint64_t seed, const RunOptions &options) {
    return run(parse_config(R"({"experiment": "oracle-suite", "seed": )" + std::to_string(seed) + "}"), options);
}

}  // namespace ffkit::harness
