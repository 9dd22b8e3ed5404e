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

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "ffkit/harness/harness.hpp"

namespace {

namespace fh = ffkit::harness;

void print_report(const fh::RunReport &report) {
    for (const fh::Gate &g : report.gates) {
        std::printf("%s  %s = %.6g (%s %.3g)\n", g.pass ? "PASS" : "FAIL", g.name.c_str(), g.value, g.relation.c_str(),
                    g.threshold);
    }
    if (report.error) std::fprintf(stderr, "ffkit: %s\n", report.error->c_str());
    std::printf("%s -> %s\n", report.status.c_str(), report.directory.string().c_str());
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Free-fermion doubling and invariant toolkit"};
    app.set_version_flag("--version", std::string(fh::toolkit_version()));
    app.require_subcommand(1);

    fh::RunOptions options;
    std::string output;
    app.add_option("--output", output, "Root directory for results (overrides the config)");
    app.add_option("--threads", options.threads, "Worker threads")->check(CLI::Range(1, 1024));

    std::string config_file;
    auto *run = app.add_subcommand("run", "Run one experiment described by a JSON config");
    run->add_option("config", config_file, "Experiment config (JSON)")->required();

    std::uint64_t seed = 0;
    auto *suite = app.add_subcommand("oracle-suite", "Compare the library with its reference computations");
    suite->add_option("--seed", seed, "Seed for randomly drawn test inputs");

    for (auto *sub : {run, suite}) {
        sub->add_option("--output", output, "Root directory for results (overrides the config)");
        sub->add_option("--threads", options.threads, "Worker threads")->check(CLI::Range(1, 1024));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : fh::kExitConfigError;
    }
    options.output = output;

    try {
        fh::RunReport report =
            run->parsed() ? fh::run(fh::load_config(config_file), options) : fh::oracle_suite(seed, options);
        print_report(report);
        return report.exit_code;
    } catch (const ffkit::Error &e) {
        std::fprintf(stderr, "ffkit: %s\n", e.what());
        return fh::exit_code_for(e.code());
    }
}
