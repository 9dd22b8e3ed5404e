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
#include <cmath>
#include <limits>
#include <string>

#include "context.hpp"
#include "ffkit/doubling.hpp"
#include "ffkit/fit.hpp"
#include "ffkit/flow.hpp"
#include "ffkit/gaussian.hpp"
#include "ffkit/harness/parallel.hpp"
#include "ffkit/wannier.hpp"

namespace ffkit::harness::detail {

namespace {

constexpr double kSpectrumTolerance = 1e-9;
constexpr double kUnitarityTolerance = 1e-8;
constexpr double kIdenticalDistanceTolerance = 1e-10;
constexpr double kFitQuality = 0.9;
constexpr double kReconstructionTolerance = 1e-8;
constexpr double kWannierSizeRatio = 1.5;
constexpr double kCommutatorSlope = 0.2;
constexpr double kLinearGrowthQuality = 0.99;

std::vector<double> uniform_grid(int points) {
    std::vector<double> grid(points);
    for (int k = 0; k < points; ++k) grid[k] = static_cast<double>(k) / (points - 1);
    grid.back() = 1.0;
    return grid;
}

const char *variant_name(FlowVariant v) { return v == FlowVariant::exact ? "exact" : "filtered"; }

}  // namespace

void run_path_scan(const ExperimentConfig &config, Context &ctx) {
    DoubledSystem sys(build_model(config));
    InterpolationPath path(sys, uniform_grid(config.grid));
    const double de = sys.delta_e();

    struct Row {
        GapRecord gap;
        double spectrum_deviation = 0.0;
        double particle_hole = 0.0;
    };
    std::vector<Row> rows(path.grid.size());
    parallel_for(rows.size(), ctx.threads(), [&](std::size_t k) {
        const double s = path.grid[k];
        BdGMatrix c = path_matrix(sys, s);
        HermitianSpectrum sp = hermitian_spectrum(c.data());
        const double gap = spectral_gap(sp);
        rows[k].gap = {s, gap, std::abs(gap - de)};
        rows[k].spectrum_deviation = (sp.values - predicted_path_spectrum(sys, s)).cwiseAbs().maxCoeff();
        rows[k].particle_hole = particle_hole_residual(c);
    });
    LocalityReport locality = verify_locality_along_path(path, config.mu);

    double max_rel = 0.0, max_spectrum = 0.0, max_ph = 0.0;
    ctx.csv("gap.csv",
            {"s", "gap", "delta_e", "deviation", "relative_deviation", "spectrum_deviation", "particle_hole_residual"},
            [&](CsvWriter &w) {
                for (const Row &r : rows) {
                    const double rel = r.gap.deviation / de;
                    max_rel = std::max(max_rel, rel);
                    max_spectrum = std::max(max_spectrum, r.spectrum_deviation);
                    max_ph = std::max(max_ph, r.particle_hole);
                    w.cell(r.gap.s).cell(r.gap.gap).cell(de).cell(r.gap.deviation).cell(rel);
                    w.cell(r.spectrum_deviation).cell(r.particle_hole);
                    w.end_row();
                }
            });
    ctx.csv("locality.csv", {"s", "expression", "s1", "margin"}, [&](CsvWriter &w) {
        for (const LocalityRecord &r : locality.records) {
            w.cell(r.s).cell(r.expression).cell(locality.s1).cell(locality.s1 - r.expression);
            w.end_row();
        }
    });
    ctx.metric("sites", sys.sites());
    ctx.metric("delta_e", de);
    ctx.metric("mu", config.mu);
    ctx.metric("s1", locality.s1);
    ctx.metric("max_particle_hole_residual", max_ph);
    ctx.gate("gap_relative_deviation", max_rel, "<", kGapInvarianceTolerance);
    ctx.gate("spectrum_deviation", max_spectrum, "<", kSpectrumTolerance);
    ctx.gate("locality_excess", locality.max_expression - locality.s1, "<=", 1e-12);
}

void run_invariants(const ExperimentConfig &config, Context &ctx) {
    DoubledSystem sys(build_model(config));
    const std::vector<double> grid = uniform_grid(config.grid);
    const bool chain = sys.lattice().dimension() == 1;
    std::optional<SectorPartition> partition;
    if (!chain) partition = disc_partition(sys.lattice());

    std::vector<InvariantRecord> records(grid.size());
    parallel_for(records.size(), ctx.threads(), [&](std::size_t k) {
        records[k] = chain ? invariant_at(sys, grid[k]) : invariant_at(sys, grid[k], *partition);
    });
    InvariantRecord base = chain ? base_invariant(sys.base()) : base_invariant(sys.base(), *partition);

    auto header = chain ? std::vector<std::string>{"s", "majorana_number"}
                        : std::vector<std::string>{"s", "nu", "nu_imag_residual"};
    auto emit = [&](CsvWriter &w, const InvariantRecord &r) {
        w.cell(r.s);
        if (chain) w.cell(*r.majorana_number);
        else w.cell(*r.nu).cell(r.nu_imag_residual);
        w.end_row();
    };
    ctx.csv("invariants.csv", header, [&](CsvWriter &w) {
        for (const auto &r : records) emit(w, r);
    });
    header.front() = "system";
    ctx.csv("base.csv", header, [&](CsvWriter &w) {
        w.cell(std::string("base"));
        if (chain) w.cell(*base.majorana_number);
        else w.cell(*base.nu).cell(base.nu_imag_residual);
        w.end_row();
    });

    if (chain) {
        ctx.metric("base_majorana_number", *base.majorana_number);
        long long nontrivial = std::count_if(records.begin(), records.end(), [](const auto &r) { return !is_cancelled(r); });
        ctx.gate("doubled_nontrivial_points", static_cast<double>(nontrivial), "==", 0.0);
    } else {
        ctx.metric("base_nu", *base.nu);
        double worst = 0.0;
        for (const auto &r : records) worst = std::max(worst, std::abs(*r.nu));
        ctx.gate("doubled_max_abs_nu", worst, "<", kChernCancellationTolerance);
    }
}

void run_boundary(const ExperimentConfig &config, Context &ctx) {
    const BoundaryConfig &opts = config.boundary;
    if (static_cast<int>(opts.region.size()) > kMaxReducedSites)
        fail(ErrorCode::capacity_exceeded, "region has " + std::to_string(opts.region.size()) + " sites, the limit is " +
                                               std::to_string(kMaxReducedSites));
    QuadraticHamiltonian base = build_model(config);
    BoundaryOptions options;
    options.mu = config.mu;
    options.xi_prime = opts.xi_prime;
    BoundaryExperiment result = opts.perturbation == "identical"
                                    ? boundary_sensitivity(base, base, opts.region, opts.margins, options)
                                    : boundary_sensitivity(base, shell_defect(base, opts.region, opts.factor),
                                                           opts.region, opts.margins, options);
    double worst = 0.0;
    ctx.csv("boundary.csv", {"margin", "distance", "envelope"}, [&](CsvWriter &w) {
        for (const BoundaryRecord &r : result.records) {
            worst = std::max(worst, r.distance);
            w.cell(r.margin).cell(r.distance).cell(r.envelope);
            w.end_row();
        }
    });
    ctx.metric("delta_e", result.delta_e);
    ctx.metric("s1", result.s1);
    ctx.metric("lieb_robinson_velocity", result.v);
    ctx.metric("xi_prime", result.xi_prime);
    ctx.metric("fitted_constant", result.fitted_constant);
    if (result.fit) {
        ctx.metric("log_distance_slope", result.fit->slope);
        ctx.metric("log_distance_r2", result.fit->r2);
    }
    if (opts.perturbation == "identical") ctx.gate("max_distance", worst, "<", kIdenticalDistanceTolerance);
    else ctx.flag("distance_decays", result.decays);
}

void run_transport(const ExperimentConfig &config, Context &ctx) {
    const TransportConfig &opts = config.transport;
    DoubledSystem sys(build_model(config));
    InterpolationPath path(sys, {0.0, 1.0});
    const double de = sys.delta_e();
    ctx.metric("delta_e", de);

    std::vector<TransportResult> runs;
    struct Job {
        int steps;
        FlowVariant variant;
        double width;
    };
    std::vector<Job> jobs{{opts.steps, opts.variant, opts.width / de}};
    for (int n : opts.convergence_steps) jobs.push_back({n, FlowVariant::exact, 0.0});
    for (double w : opts.widths) jobs.push_back({opts.steps, FlowVariant::filtered, w / de});
    runs.resize(jobs.size());
    parallel_for(jobs.size(), ctx.threads(), [&](std::size_t k) {
        runs[k] = transport_projector(path, jobs[k].steps, jobs[k].variant, jobs[k].width);
    });

    const TransportResult &main = runs.front();
    ctx.csv("transport.csv", {"step", "s", "error"}, [&](CsvWriter &w) {
        for (std::size_t k = 0; k < main.errors.size(); ++k) {
            w.cell(static_cast<long long>(k + 1)).cell(main.s_grid[k]).cell(main.errors[k]);
            w.end_row();
        }
    });
    ctx.metric("steps", main.steps);
    ctx.gate(std::string(variant_name(main.variant)) + "_final_error", main.final_error, "<", opts.tolerance);
    ctx.gate("unitarity_residual", main.unitarity_residual, "<", kUnitarityTolerance);
    ctx.gate("idempotency_residual", main.idempotency_residual, "<", kUnitarityTolerance);
    ctx.gate("trace_drift", main.trace_drift, "<", kUnitarityTolerance);

    std::size_t next = 1;
    if (!opts.convergence_steps.empty()) {
        double min_order = std::numeric_limits<double>::infinity();
        ctx.csv("convergence.csv", {"steps", "final_error", "observed_order"}, [&](CsvWriter &w) {
            for (std::size_t k = 0; k < opts.convergence_steps.size(); ++k) {
                const TransportResult &r = runs[next + k];
                w.cell(r.steps).cell(r.final_error);
                if (k == 0) {
                    w.cell(std::string());
                } else {
                    const TransportResult &prev = runs[next + k - 1];
                    double order = std::log(prev.final_error / r.final_error) /
                                   std::log(static_cast<double>(r.steps) / prev.steps);
                    min_order = std::min(min_order, order);
                    w.cell(order);
                }
                w.end_row();
            }
        });
        if (opts.convergence_steps.size() > 1) ctx.gate("min_convergence_order", min_order, ">=", 2.0);
        next += opts.convergence_steps.size();
    }
    if (!opts.widths.empty()) {
        bool monotone = true;
        ctx.csv("filtered.csv", {"width_times_delta_e", "width", "final_error"}, [&](CsvWriter &w) {
            for (std::size_t k = 0; k < opts.widths.size(); ++k) {
                const TransportResult &r = runs[next + k];
                if (k > 0 && !(r.final_error < runs[next + k - 1].final_error)) monotone = false;
                w.cell(opts.widths[k]).cell(r.width).cell(r.final_error);
                w.end_row();
            }
        });
        ctx.flag("filtered_error_decreases_with_width", monotone);
    }
    if (opts.generator_profile) {
        FlowGenerator k = path_flow_generator(sys, 0.0, FlowVariant::exact);
        GeneratorLocality loc = generator_locality_profile(k, sys, config.mu);
        ctx.csv("generator.csv", {"distance", "max_abs"}, [&](CsvWriter &w) {
            for (const DecayRecord &r : loc.profile) {
                w.cell(r.distance).cell(r.max_abs);
                w.end_row();
            }
        });
        ctx.metric("generator_reference_length", loc.reference_length);
        if (loc.fit) ctx.metric("generator_length", loc.fit->xi);
        ctx.gate("generator_fit_r2", loc.fit ? loc.fit->r2 : 0.0, ">", kFitQuality);
    }
}

void run_wannier(const ExperimentConfig &config, Context &ctx) {
    const std::vector<int> &sizes = config.sizes;
    if (config.lattice.shape == "chain") {
        std::vector<WannierBasis> bases(sizes.size());
        std::vector<double> residuals(sizes.size());
        parallel_for(sizes.size(), ctx.threads(), [&](std::size_t k) {
            QuadraticHamiltonian h = build_model(config, sizes[k]);
            OccupiedProjector p = occupied_projector(h);
            bases[k] = gxg_wannier_1d(p, position_operator(h.lattice(), Axis::x), h.lattice());
            residuals[k] = reconstruction_residual(bases[k], p);
        });
        double worst_residual = 0.0, min_r2 = 1.0, lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            const WannierBasis &w = bases[k];
            ctx.csv("wannier_" + std::to_string(sizes[k]) + ".csv",
                    {"index", "center", "length", "r2", "bins", "degenerate"}, [&](CsvWriter &csv) {
                        for (int i = 0; i < w.size(); ++i) {
                            const LocalizationFit &f = w.localization[i];
                            csv.cell(i).cell(w.centers(i)).cell(f.length).cell(f.r2).cell(f.bins);
                            csv.cell(f.degenerate ? 1 : 0);
                            csv.end_row();
                            if (!f.degenerate && f.bins >= 3) min_r2 = std::min(min_r2, f.r2);
                        }
                    });
            worst_residual = std::max(worst_residual, residuals[k]);
            lo = std::min(lo, w.max_length());
            hi = std::max(hi, w.max_length());
        }
        ctx.csv("sizes.csv", {"sites", "functions", "reconstruction_residual", "max_length"}, [&](CsvWriter &csv) {
            for (std::size_t k = 0; k < sizes.size(); ++k) {
                csv.cell(sizes[k]).cell(bases[k].size()).cell(residuals[k]).cell(bases[k].max_length());
                csv.end_row();
            }
        });
        ctx.gate("reconstruction_residual", worst_residual, "<", kReconstructionTolerance);
        ctx.gate("min_localization_r2", min_r2, ">", kFitQuality);
        if (sizes.size() > 1) {
            // Atomic limits localize every function on one site; the ratio is then 1.
            double ratio = hi == 0.0 ? 1.0 : hi / lo;
            ctx.gate("max_length_ratio", ratio, "<", kWannierSizeRatio);
        }
        return;
    }
    std::vector<CommutatorReport> reports(sizes.size());
    parallel_for(sizes.size(), ctx.threads(), [&](std::size_t k) {
        reports[k] = almost_commuting_report(build_model(config, sizes[k]));
    });
    ctx.csv("commutator.csv", {"size", "commutator_norm", "gxg_norm", "gyg_norm", "ratio"}, [&](CsvWriter &w) {
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            const CommutatorReport &r = reports[k];
            w.cell(sizes[k]).cell(r.commutator_norm).cell(r.gxg_norm).cell(r.gyg_norm).cell(r.ratio);
            w.end_row();
        }
    });
    if (sizes.size() >= 3) {
        std::vector<double> l(sizes.begin(), sizes.end()), c, g;
        for (const auto &r : reports) {
            c.push_back(r.commutator_norm);
            g.push_back(r.gxg_norm);
        }
        LinearFit cf = linear_fit(l, c), gf = linear_fit(l, g);
        ctx.metric("gxg_slope", gf.slope);
        ctx.gate("commutator_growth_slope", std::abs(cf.slope), "<", kCommutatorSlope);
        ctx.gate("gxg_linear_r2", gf.slope > 0.0 ? gf.r2 : 0.0, ">", kLinearGrowthQuality);
    }
}

}  // namespace ffkit::harness::detail
