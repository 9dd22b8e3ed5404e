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
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ffkit/harness/harness.hpp"
#include "ffkit/matrix_io.hpp"

namespace ffkit::harness::detail {

class Context {
  public:
    Context(std::filesystem::path dir, int threads, RunReport &report)
        : dir_(std::move(dir)), threads_(threads), report_(report) {}

    int threads() const noexcept { return threads_; }

    void gate(std::string name, double value, std::string relation, double threshold) {
        report_.gates.push_back(make_gate(std::move(name), value, std::move(relation), threshold));
    }
    void flag(std::string name, bool ok) { gate(std::move(name), ok ? 1.0 : 0.0, "==", 1.0); }
    void metric(const std::string &name, double value) { report_.metrics[name] = value; }

    /// Writes {dir}/{file}; `rows` receives a CsvWriter with the header already out.
    template <typename Rows>
    void csv(const std::string &file, std::vector<std::string> header, Rows &&rows);

  private:
    std::filesystem::path dir_;
    int threads_;
    RunReport &report_;
};

void write_file(const std::filesystem::path &path, const std::string &body);

template <typename Rows>
void Context::csv(const std::string &file, std::vector<std::string> header, Rows &&rows) {
    std::ostringstream body;
    CsvWriter writer(body, std::move(header));
    rows(writer);
    write_file(dir_ / file, body.str());
    report_.files.push_back(file);
}

void run_path_scan(const ExperimentConfig &config, Context &ctx);
void run_invariants(const ExperimentConfig &config, Context &ctx);
void run_boundary(const ExperimentConfig &config, Context &ctx);
void run_transport(const ExperimentConfig &config, Context &ctx);
void run_wannier(const ExperimentConfig &config, Context &ctx);
void run_oracle_suite(std::uint64_t seed, Context &ctx);

}  // namespace ffkit::harness::detail
