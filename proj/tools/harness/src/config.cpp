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
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ffkit/harness/harness.hpp"
#include "json.hpp"

namespace ffkit::harness {

namespace {

using nlohmann::json;

[[noreturn]] void reject(const std::string &what) { fail(ErrorCode::configuration, what); }

void allow_only(const json &obj, const std::string &where, const std::set<std::string> &keys) {
    for (const auto &[key, value] : obj.items())
        if (!keys.contains(key)) reject("unknown key '" + key + "' in " + where);
}

const json &require(const json &obj, const std::string &key, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) reject("missing '" + key + "' in " + where);
    return *it;
}

double as_number(const json &v, const std::string &key) {
    if (!v.is_number()) reject("'" + key + "' must be a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) reject("'" + key + "' must be finite");
    return x;
}

long long as_integer(const json &v, const std::string &key) {
    if (!v.is_number_integer()) reject("'" + key + "' must be an integer");
    return v.get<long long>();
}

int as_int_in(const json &v, const std::string &key, long long lo, long long hi) {
    long long x = as_integer(v, key);
    if (x < lo || x > hi)
        reject("'" + key + "' = " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(x);
}

double positive(const json &v, const std::string &key) {
    double x = as_number(v, key);
    if (x <= 0.0) reject("'" + key + "' must be positive");
    return x;
}

std::vector<int> int_list(const json &v, const std::string &key, long long lo, long long hi) {
    if (!v.is_array() || v.empty()) reject("'" + key + "' must be a non-empty array");
    std::vector<int> out;
    for (const auto &x : v) out.push_back(as_int_in(x, key, lo, hi));
    return out;
}

std::optional<ExperimentKind> kind_from(std::string_view name) {
    for (auto k : {ExperimentKind::path_scan, ExperimentKind::invariants, ExperimentKind::boundary,
                   ExperimentKind::transport, ExperimentKind::wannier, ExperimentKind::oracle_suite})
        if (to_string(k) == name) return k;
    return std::nullopt;
}

bool valid_name(const std::string &name) {
    if (name.empty() || name == "." || name == "..") return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '-' || c == '_' || c == '.';
    });
}

struct ModelShape {
    std::set<std::string> params;
    std::set<std::string> shapes;
    bool number_conserving;
};

const std::map<std::string, ModelShape> &model_table() {
    static const std::map<std::string, ModelShape> table{
        {"kitaev", {{"t", "delta", "mu_chem", "disorder"}, {"chain"}, false}},
        {"dimer", {{"t1", "t2", "stagger", "disorder"}, {"chain"}, true}},
        {"pplusip", {{"t", "delta", "mu_chem"}, {"square"}, false}},
        {"chern", {{"mass", "hopping"}, {"square"}, true}},
        {"trivial", {{"gap"}, {"chain", "square"}, true}},
    };
    return table;
}

ModelConfig parse_model(const json &m) {
    if (!m.is_object()) reject("'model' must be an object");
    ModelConfig opts;
    const json &name = require(m, "name", "model");
    if (!name.is_string()) reject("model 'name' must be a string");
    opts.name = name.get<std::string>();
    auto it = model_table().find(opts.name);
    if (it == model_table().end()) reject("unknown model '" + opts.name + "'");
    std::set<std::string> keys = it->second.params;
    keys.insert("name");
    allow_only(m, "model", keys);
    for (const auto &[key, value] : m.items())
        if (key != "name") opts.params[key] = as_number(value, key);
    if (opts.params.contains("disorder") && opts.params["disorder"] < 0.0) reject("'disorder' must be non-negative");
    return opts;
}

LatticeConfig parse_lattice(const json &l, bool sized) {
    if (!l.is_object()) reject("'lattice' must be an object");
    LatticeConfig opts;
    const json &shape = require(l, "shape", "lattice");
    if (!shape.is_string()) reject("lattice 'shape' must be a string");
    opts.shape = shape.get<std::string>();
    if (auto p = l.find("periodic"); p != l.end()) {
        if (!p->is_boolean()) reject("'periodic' must be a boolean");
        opts.periodic = p->get<bool>();
    }
    if (opts.shape == "chain") {
        allow_only(l, "lattice", sized ? std::set<std::string>{"shape", "periodic", "sites"}
                                       : std::set<std::string>{"shape", "periodic"});
        if (sized) opts.sites = as_int_in(require(l, "sites", "lattice"), "sites", 1, 4096);
    } else if (opts.shape == "square") {
        allow_only(l, "lattice", sized ? std::set<std::string>{"shape", "periodic", "lx", "ly"}
                                       : std::set<std::string>{"shape", "periodic"});
        if (sized) {
            opts.lx = as_int_in(require(l, "lx", "lattice"), "lx", 1, 256);
            opts.ly = as_int_in(require(l, "ly", "lattice"), "ly", 1, 256);
        }
    } else {
        reject("unknown lattice shape '" + opts.shape + "'");
    }
    return opts;
}

std::set<std::string> allowed_keys(ExperimentKind kind) {
    std::set<std::string> keys{"experiment", "name", "seed", "output"};
    auto add = [&](std::initializer_list<const char *> more) { keys.insert(more.begin(), more.end()); };
    switch (kind) {
    case ExperimentKind::path_scan: add({"model", "lattice", "grid", "mu"}); break;
    case ExperimentKind::invariants: add({"model", "lattice", "grid"}); break;
    case ExperimentKind::boundary: add({"model", "lattice", "region", "margins", "perturbation", "mu", "xi_prime"}); break;
    case ExperimentKind::transport:
        add({"model", "lattice", "steps", "variant", "width", "tolerance", "convergence_steps", "widths",
             "generator_profile", "mu"});
        break;
    case ExperimentKind::wannier: add({"model", "lattice", "sizes"}); break;
    case ExperimentKind::oracle_suite: break;
    }
    return keys;
}

void parse_boundary(const json &j, ExperimentConfig &c) {
    BoundaryConfig &b = c.boundary;
    b.region = int_list(require(j, "region", "config"), "region", 0, 1 << 20);
    b.margins = int_list(require(j, "margins", "config"), "margins", 0, 1 << 20);
    const json &p = require(j, "perturbation", "config");
    if (!p.is_object()) reject("'perturbation' must be an object");
    const json &kind = require(p, "kind", "perturbation");
    if (!kind.is_string()) reject("perturbation 'kind' must be a string");
    b.perturbation = kind.get<std::string>();
    if (b.perturbation == "identical") {
        allow_only(p, "perturbation", {"kind"});
    } else if (b.perturbation == "shell-defect") {
        allow_only(p, "perturbation", {"kind", "factor"});
        b.factor = as_number(require(p, "factor", "perturbation"), "factor");
    } else {
        reject("unknown perturbation kind '" + b.perturbation + "'");
    }
    if (auto x = j.find("xi_prime"); x != j.end()) b.xi_prime = positive(*x, "xi_prime");
}

void parse_transport(const json &j, ExperimentConfig &c) {
    TransportConfig &t = c.transport;
    if (auto v = j.find("steps"); v != j.end()) t.steps = as_int_in(*v, "steps", 2, 1000000);
    if (auto v = j.find("variant"); v != j.end()) {
        if (*v == "exact") t.variant = FlowVariant::exact;
        else if (*v == "filtered") t.variant = FlowVariant::filtered;
        else reject("'variant' must be \"exact\" or \"filtered\"");
    }
    if (auto v = j.find("width"); v != j.end()) t.width = positive(*v, "width");
    if (t.variant == FlowVariant::filtered && t.width <= 0.0) reject("filtered transport needs a 'width'");
    if (auto v = j.find("tolerance"); v != j.end()) t.tolerance = positive(*v, "tolerance");
    if (auto v = j.find("convergence_steps"); v != j.end()) {
        t.convergence_steps = int_list(*v, "convergence_steps", 2, 1000000);
        if (!std::is_sorted(t.convergence_steps.begin(), t.convergence_steps.end()) ||
            std::adjacent_find(t.convergence_steps.begin(), t.convergence_steps.end()) != t.convergence_steps.end())
            reject("'convergence_steps' must be strictly increasing");
    }
    if (auto v = j.find("widths"); v != j.end()) {
        if (!v->is_array() || v->size() < 2) reject("'widths' must list at least two values");
        for (const auto &w : *v) t.widths.push_back(positive(w, "widths"));
    }
    if (auto v = j.find("generator_profile"); v != j.end()) {
        if (!v->is_boolean()) reject("'generator_profile' must be a boolean");
        t.generator_profile = v->get<bool>();
    }
}

void check_model(const ExperimentConfig &c) {
    const ModelShape &shape = model_table().at(c.model.name);
    if (!shape.shapes.contains(c.lattice.shape))
        reject("model '" + c.model.name + "' is not defined on a " + c.lattice.shape);
    if (c.kind == ExperimentKind::wannier) {
        if (!shape.number_conserving) reject("wannier needs a number-conserving model");
        if (c.lattice.periodic) reject("wannier needs open boundaries");
    }
    try {
        if (c.kind == ExperimentKind::wannier) {
            for (int size : c.sizes) build_model(c, size);
        } else {
            QuadraticHamiltonian h = build_model(c);
            if (c.kind == ExperimentKind::boundary) {
                for (int site : c.boundary.region)
                    if (site >= h.sites()) reject("region site " + std::to_string(site) + " is outside the lattice");
                std::set<int> unique(c.boundary.region.begin(), c.boundary.region.end());
                if (unique.size() != c.boundary.region.size()) reject("region lists a site twice");
            }
        }
    } catch (const Error &e) {
        if (e.code() == ErrorCode::configuration) throw;
        reject(std::string("model cannot be built: ") + e.what());
    }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::path_scan: return "path-scan";
    case ExperimentKind::invariants: return "invariants";
    case ExperimentKind::boundary: return "boundary";
    case ExperimentKind::transport: return "transport";
    case ExperimentKind::wannier: return "wannier";
    case ExperimentKind::oracle_suite: return "oracle-suite";
    }
    return "unknown";
}

ExperimentConfig parse_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        reject(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) reject("config must be a JSON object");

    ExperimentConfig c;
    const json &experiment = require(j, "experiment", "config");
    if (!experiment.is_string()) reject("'experiment' must be a string");
    auto kind = kind_from(experiment.get<std::string>());
    if (!kind) reject("unknown experiment '" + experiment.get<std::string>() + "'");
    c.kind = *kind;
    allow_only(j, "config", allowed_keys(c.kind));

    if (auto v = j.find("seed"); v != j.end()) {
        if (!v->is_number_unsigned()) reject("'seed' must be a non-negative integer");
        c.seed = v->get<std::uint64_t>();
    }
    if (auto v = j.find("name"); v != j.end()) {
        if (!v->is_string() || !valid_name(v->get<std::string>()))
            reject("'name' must be a non-empty string of letters, digits, '.', '-' or '_'");
        c.name = v->get<std::string>();
    } else if (c.kind == ExperimentKind::oracle_suite) {
        c.name = "seed-" + std::to_string(c.seed);
    } else {
        reject("missing 'name' in config");
    }
    if (auto v = j.find("output"); v != j.end()) {
        if (!v->is_string() || v->get<std::string>().empty()) reject("'output' must be a non-empty string");
        c.output = v->get<std::string>();
    }
    c.canonical = j.dump();
    if (c.kind == ExperimentKind::oracle_suite) return c;

    c.model = parse_model(require(j, "model", "config"));
    c.lattice = parse_lattice(require(j, "lattice", "config"), c.kind != ExperimentKind::wannier);
    if (auto v = j.find("mu"); v != j.end()) c.mu = positive(*v, "mu");

    switch (c.kind) {
    case ExperimentKind::path_scan:
        c.grid = 101;
        if (auto v = j.find("grid"); v != j.end()) c.grid = as_int_in(*v, "grid", 2, 100000);
        break;
    case ExperimentKind::invariants:
        c.grid = 11;
        if (auto v = j.find("grid"); v != j.end()) c.grid = as_int_in(*v, "grid", 2, 100000);
        break;
    case ExperimentKind::boundary: parse_boundary(j, c); break;
    case ExperimentKind::transport: parse_transport(j, c); break;
    case ExperimentKind::wannier: {
        c.sizes = int_list(require(j, "sizes", "config"), "sizes", 2, c.lattice.shape == "chain" ? 4096 : 64);
        if (!std::is_sorted(c.sizes.begin(), c.sizes.end())) reject("'sizes' must be ascending");
        break;
    }
    case ExperimentKind::oracle_suite: break;
    }
    check_model(c);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) reject("cannot read config file " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

namespace {

double param(const ModelConfig &m, const std::string &key, double fallback) {
    auto it = m.params.find(key);
    return it == m.params.end() ? fallback : it->second;
}

QuadraticHamiltonian build(const ExperimentConfig &c, int sites, int lx, int ly) {
    const ModelConfig &m = c.model;
    const bool periodic = c.lattice.periodic;
    if (m.name == "kitaev") {
        KitaevParams p;
        p.t = param(m, "t", p.t);
        p.delta = param(m, "delta", p.delta);
        p.mu_chem = param(m, "mu_chem", p.mu_chem);
        p.disorder = param(m, "disorder", 0.0);
        p.seed = c.seed;
        return kitaev_chain(sites, p, periodic);
    }
    if (m.name == "dimer") {
        DimerParams p;
        p.t1 = param(m, "t1", p.t1);
        p.t2 = param(m, "t2", p.t2);
        p.stagger = param(m, "stagger", p.stagger);
        p.disorder = param(m, "disorder", 0.0);
        p.seed = c.seed;
        return dimerized_chain(sites, p, periodic);
    }
    if (m.name == "pplusip") {
        PwaveParams p;
        p.t = param(m, "t", p.t);
        p.delta = param(m, "delta", p.delta);
        p.mu_chem = param(m, "mu_chem", p.mu_chem);
        return pplusip_model(lx, ly, p, periodic);
    }
    if (m.name == "chern") {
        ChernParams p;
        p.mass = param(m, "mass", p.mass);
        p.hopping = param(m, "hopping", p.hopping);
        return chern_insulator_model(lx, ly, p, periodic);
    }
    double gap = param(m, "gap", 1.0);
    if (c.lattice.shape == "chain") return trivial_model(build_chain(sites, periodic), gap);
    return trivial_model(build_square(lx, ly, periodic), gap);
}

}  // namespace

QuadraticHamiltonian build_model(const ExperimentConfig &config) {
    return build(config, config.lattice.sites, config.lattice.lx, config.lattice.ly);
}

QuadraticHamiltonian build_model(const ExperimentConfig &config, int size) {
    return build(config, size, size, size);
}

}  // namespace ffkit::harness
