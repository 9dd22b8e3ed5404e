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

#include "ffkit/harness/harness.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>
#include <unistd.h>

#include "ffkit/harness/parallel.hpp"
#include "json.hpp"

namespace ffkit::harness {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class ScratchDir {
  public:
    ScratchDir() {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        path_ = fs::temp_directory_path() /
                ("ffkit-" + std::to_string(::getpid()) + "-" + info->test_suite_name() + "-" + info->name());
        fs::remove_all(path_);
    }
    ~ScratchDir() { fs::remove_all(path_); }
    const fs::path &path() const { return path_; }

  private:
    fs::path path_;
};

bool rejected(const std::string &text) {
    try {
        parse_config(text);
    } catch (const Error &e) {
        return e.code() == ErrorCode::configuration;
    }
    return false;
}

const char *kScan = R"({
  "experiment": "path-scan", "name": "small", "seed": 4,
  "model": {"name": "kitaev", "t": 1.0, "delta": 0.7, "mu_chem": 0.5},
  "lattice": {"shape": "chain", "sites": 8, "periodic": true},
  "grid": 11
})";

TEST(Config, AcceptsCompleteDocument) {
    ExperimentConfig c = parse_config(kScan);
    EXPECT_EQ(c.kind, ExperimentKind::path_scan);
    EXPECT_EQ(c.name, "small");
    EXPECT_EQ(c.seed, 4u);
    EXPECT_EQ(c.grid, 11);
    EXPECT_EQ(c.lattice.sites, 8);
    EXPECT_DOUBLE_EQ(c.model.params.at("delta"), 0.7);
    EXPECT_EQ(build_model(c).sites(), 8);
}

TEST(Config, CanonicalFormIgnoresKeyOrderAndSpacing) {
    ExperimentConfig a = parse_config(kScan);
    ExperimentConfig b = parse_config(
        R"({"grid":11,"lattice":{"periodic":true,"sites":8,"shape":"chain"},"seed":4,"name":"small",)"
        R"("model":{"mu_chem":0.5,"delta":0.7,"t":1.0,"name":"kitaev"},"experiment":"path-scan"})");
    EXPECT_EQ(fnv1a_hex(a.canonical), fnv1a_hex(b.canonical));
}

TEST(Config, RejectsMalformedDocuments) {
    EXPECT_TRUE(rejected("{"));
    EXPECT_TRUE(rejected("[]"));
    EXPECT_TRUE(rejected(R"({"experiment": "path-scan", "name": "x"})"));
    EXPECT_TRUE(rejected(R"({"experiment": "warp", "name": "x"})"));
    std::string extra = kScan;
    extra.insert(1, R"("colour": "blue", )");
    EXPECT_TRUE(rejected(extra));
}

TEST(Config, RejectsBadValues) {
    auto with = [](const std::string &from, const std::string &to) {
        std::string s = kScan;
        s.replace(s.find(from), from.size(), to);
        return s;
    };
    EXPECT_TRUE(rejected(with(R"("grid": 11)", R"("grid": 1)")));
    EXPECT_TRUE(rejected(with(R"("grid": 11)", R"("grid": 2.5)")));
    EXPECT_TRUE(rejected(with(R"("sites": 8)", R"("sites": "8")")));
    EXPECT_TRUE(rejected(with(R"("delta": 0.7)", R"("delta": 0.7, "gamma": 1)")));
    EXPECT_TRUE(rejected(with(R"("name": "small")", R"("name": "../escape")")));
    EXPECT_TRUE(rejected(with(R"("seed": 4)", R"("seed": -4)")));
    EXPECT_TRUE(rejected(with(R"("shape": "chain", "sites": 8)", R"("shape": "square", "lx": 3, "ly": 3)")));
    EXPECT_TRUE(rejected(with(R"("sites": 8)", R"("sites": 1)")));
}

TEST(Config, ValidatesExperimentSpecificFields) {
    const std::string boundary = R"({
      "experiment": "boundary", "name": "b",
      "model": {"name": "kitaev"}, "lattice": {"shape": "chain", "sites": 12, "periodic": true},
      "region": REGION, "margins": [1, 2], "perturbation": PERT})";
    auto make = [&](const std::string &region, const std::string &pert) {
        std::string s = boundary;
        s.replace(s.find("REGION"), 6, region);
        s.replace(s.find("PERT"), 4, pert);
        return s;
    };
    EXPECT_NO_THROW(parse_config(make("[5, 6]", R"({"kind": "identical"})")));
    EXPECT_TRUE(rejected(make("[5, 5]", R"({"kind": "identical"})")));
    EXPECT_TRUE(rejected(make("[5, 40]", R"({"kind": "identical"})")));
    EXPECT_TRUE(rejected(make("[]", R"({"kind": "identical"})")));
    EXPECT_TRUE(rejected(make("[5]", R"({"kind": "shell-defect"})")));
    EXPECT_TRUE(rejected(make("[5]", R"({"kind": "identical", "factor": 2})")));

    EXPECT_TRUE(rejected(R"({"experiment": "wannier", "name": "w", "model": {"name": "kitaev"},
                             "lattice": {"shape": "chain"}, "sizes": [8]})"));
    EXPECT_TRUE(rejected(R"({"experiment": "wannier", "name": "w", "model": {"name": "dimer"},
                             "lattice": {"shape": "chain", "sites": 8}, "sizes": [8]})"));
    EXPECT_TRUE(rejected(R"({"experiment": "transport", "name": "t", "model": {"name": "kitaev"},
                             "lattice": {"shape": "chain", "sites": 8, "periodic": true}, "variant": "filtered"})"));
    EXPECT_TRUE(rejected(R"({"experiment": "transport", "name": "t", "model": {"name": "kitaev"},
                             "lattice": {"shape": "chain", "sites": 8, "periodic": true},
                             "convergence_steps": [4, 2]})"));
}

TEST(Config, OracleSuiteNameDefaultsToSeed) {
    ExperimentConfig c = parse_config(R"({"experiment": "oracle-suite", "seed": 12})");
    EXPECT_EQ(c.name, "seed-12");
    EXPECT_TRUE(rejected(R"({"experiment": "oracle-suite", "model": {"name": "kitaev"}})"));
}

TEST(Hash, MatchesPublishedFnv1aVectors) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(Gate, RelationsAndExitCodes) {
    EXPECT_TRUE(make_gate("g", 1.0, "<", 2.0).pass);
    EXPECT_FALSE(make_gate("g", 2.0, "<", 2.0).pass);
    EXPECT_TRUE(make_gate("g", 2.0, "<=", 2.0).pass);
    EXPECT_TRUE(make_gate("g", 2.0, ">=", 2.0).pass);
    EXPECT_FALSE(make_gate("g", 2.0, ">", 2.0).pass);
    EXPECT_TRUE(make_gate("g", 0.0, "==", 0.0).pass);
    EXPECT_FALSE(make_gate("g", std::nan(""), "<", 1.0).pass);
    EXPECT_THROW(make_gate("g", 0.0, "~", 0.0), std::invalid_argument);
    EXPECT_EQ(exit_code_for(ErrorCode::configuration), kExitConfigError);
    EXPECT_EQ(exit_code_for(ErrorCode::capacity_exceeded), kExitCapacity);
    EXPECT_EQ(exit_code_for(ErrorCode::gapless_input), kExitGateFailure);
}

TEST(ParallelFor, FillsEverySlotOnce) {
    for (int threads : {1, 2, 7}) {
        std::vector<int> hits(100, 0);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += static_cast<int>(i); });
        for (std::size_t i = 0; i < hits.size(); ++i) EXPECT_EQ(hits[i], static_cast<int>(i));
    }
    std::atomic<int> calls{0};
    parallel_for(0, 4, [&](std::size_t) { ++calls; });
    EXPECT_EQ(calls.load(), 0);
}

TEST(ParallelFor, RethrowsWorkerFailure) {
    EXPECT_THROW(parallel_for(10, 3,
                              [](std::size_t i) {
                                  if (i == 6) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
}

TEST(Run, WritesLayoutAndManifest) {
    ScratchDir dir;
    RunReport r = run(parse_config(kScan), {dir.path(), 1});
    EXPECT_EQ(r.exit_code, kExitPass) << r.error.value_or("");
    EXPECT_EQ(r.status, "pass");
    const fs::path out = dir.path() / "path-scan" / "small";
    EXPECT_EQ(r.directory, out);
    ASSERT_TRUE(fs::exists(out / "manifest.json"));
    EXPECT_TRUE(fs::exists(out / "gap.csv"));
    EXPECT_TRUE(fs::exists(out / "locality.csv"));

    auto m = nlohmann::json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(m["status"], "pass");
    EXPECT_EQ(m["experiment"], "path-scan");
    EXPECT_EQ(m["config_hash"], fnv1a_hex(parse_config(kScan).canonical));
    EXPECT_EQ(m["version"], std::string(toolkit_version()));
    EXPECT_TRUE(m["error"].is_null());
    EXPECT_EQ(m["gates"].size(), r.gates.size());

    std::istringstream csv(slurp(out / "gap.csv"));
    std::string header, row;
    std::getline(csv, header);
    EXPECT_EQ(header, "s,gap,delta_e,deviation,relative_deviation,spectrum_deviation,particle_hole_residual");
    int rows = 0;
    while (std::getline(csv, row)) ++rows;
    EXPECT_EQ(rows, 11);
}

TEST(Run, CsvBodiesIndependentOfThreadsAndRepeats) {
    ScratchDir dir;
    ExperimentConfig c = parse_config(kScan);
    run(c, {dir.path() / "a", 1});
    run(c, {dir.path() / "b", 3});
    run(c, {dir.path() / "c", 1});
    for (const char *f : {"gap.csv", "locality.csv"}) {
        std::string a = slurp(dir.path() / "a/path-scan/small" / f);
        EXPECT_FALSE(a.empty());
        EXPECT_EQ(a, slurp(dir.path() / "b/path-scan/small" / f)) << f;
        EXPECT_EQ(a, slurp(dir.path() / "c/path-scan/small" / f)) << f;
    }
}

TEST(Run, IdenticalSystemsAreIndistinguishable) {
    ScratchDir dir;
    RunReport r = run(parse_config(R"({
      "experiment": "boundary", "name": "same",
      "model": {"name": "kitaev", "t": 1.0, "delta": 0.5, "mu_chem": 1.5},
      "lattice": {"shape": "chain", "sites": 24, "periodic": true},
      "region": [11, 12], "margins": [1, 2, 3, 4],
      "perturbation": {"kind": "identical"}})"),
                      {dir.path(), 1});
    EXPECT_EQ(r.exit_code, kExitPass) << r.error.value_or("");
    ASSERT_EQ(r.gates.size(), 1u);
    EXPECT_LT(r.gates[0].value, 1e-10);
}

TEST(Run, CapacityFailureLeavesManifest) {
    ScratchDir dir;
    RunReport r = run(parse_config(R"({
      "experiment": "boundary", "name": "wide",
      "model": {"name": "kitaev"}, "lattice": {"shape": "chain", "sites": 20, "periodic": true},
      "region": [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12], "margins": [1],
      "perturbation": {"kind": "identical"}})"),
                      {dir.path(), 1});
    EXPECT_EQ(r.exit_code, kExitCapacity);
    auto m = nlohmann::json::parse(slurp(r.directory / "manifest.json"));
    EXPECT_EQ(m["status"], "error");
    EXPECT_NE(m["error"].get<std::string>().find("capacity"), std::string::npos);
}

TEST(Run, NumericalFailureExitsOne) {
    ScratchDir dir;
    // mu_chem = 2t closes the bulk gap of the periodic chain.
    RunReport r = run(parse_config(R"({
      "experiment": "path-scan", "name": "critical",
      "model": {"name": "kitaev", "t": 1.0, "delta": 1.0, "mu_chem": 2.0},
      "lattice": {"shape": "chain", "sites": 8, "periodic": true}})"),
                      {dir.path(), 1});
    EXPECT_EQ(r.exit_code, kExitGateFailure);
    EXPECT_EQ(r.status, "error");
    EXPECT_TRUE(fs::exists(r.directory / "manifest.json"));
}

TEST(Run, GateFailureIsReported) {
    ScratchDir dir;
    // dE > s1 / 4 here, so the combined locality expression overshoots s1.
    RunReport r = run(parse_config(R"({
      "experiment": "path-scan", "name": "atomic",
      "model": {"name": "trivial", "gap": 2.0},
      "lattice": {"shape": "chain", "sites": 4, "periodic": false}, "grid": 5})"),
                      {dir.path(), 1});
    EXPECT_EQ(r.exit_code, kExitGateFailure);
    EXPECT_EQ(r.status, "fail");
    ASSERT_TRUE(r.error.has_value());
    EXPECT_NE(r.error->find("locality_excess"), std::string::npos);
}

TEST(OracleSuite, EveryComparisonPasses) {
    ScratchDir dir;
    RunReport r = oracle_suite(11, {dir.path(), 2});
    EXPECT_EQ(r.exit_code, kExitPass) << r.error.value_or("");
    EXPECT_GE(r.gates.size(), 10u);
    EXPECT_TRUE(fs::exists(dir.path() / "oracle-suite" / "seed-11" / "comparisons.csv"));
}

}  // namespace
}  // namespace ffkit::harness
