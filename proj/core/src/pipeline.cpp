// Copyright 2026 The gbs-phase-space Authors
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

#include "gbs/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "gbs/error.hpp"
#include "gbs/faker.hpp"
#include "gbs/io.hpp"
#include "gbs/oracle.hpp"
#include "gbs/rng.hpp"

namespace gbs {

std::string_view to_string(PipelineMode mode) {
    switch (mode) {
        case PipelineMode::simulate: return "simulate";
        case PipelineMode::fake: return "fake";
        case PipelineMode::compare: return "compare";
        case PipelineMode::oracle: return "oracle";
        case PipelineMode::permtest: return "permtest";
    }
    return "unknown";
}

PipelineMode parse_pipeline_mode(std::string_view text) {
    for (auto mode : {PipelineMode::simulate, PipelineMode::fake, PipelineMode::compare, PipelineMode::oracle,
                      PipelineMode::permtest})
        if (text == to_string(mode)) return mode;
    fail(ErrorCode::config, "unknown mode '" + std::string(text) + "'");
}

TransmissionMatrix build_transmission(const RunConfig &config) {
    TransmissionMatrix base;
    if (config.network.haar_seed) {
        base = make_transmission(generate_haar_unitary(config.state.modes, *config.network.haar_seed), 1.0);
    } else {
        base = transmission_from_matrix(read_matrix(*config.network.matrix_file));
        if (base.dim_out() != config.state.modes)
            fail(ErrorCode::config, "matrix file has " + std::to_string(base.dim_out()) + " outputs but state.modes is " +
                                        std::to_string(config.state.modes));
    }
    return make_transmission(base, config.network.t);
}

GaussianModeMoments build_moments(const RunConfig &config, const TransmissionMatrix &transmission) {
    GaussianModeMoments moments = derive_moments(config.state);
    const std::size_t inputs = transmission.dim_in();
    if (moments.size() > inputs) {
        for (std::size_t j = inputs; j < moments.size(); ++j)
            if (moments.n[j] != 0.0)
                fail(ErrorCode::config, "non-vacuum input in mode " + std::to_string(j) +
                                            " has no column in the transmission matrix");
        moments.n.resize(inputs);
        moments.m_tilde.resize(inputs);
        moments.var_x.resize(inputs);
        moments.var_y.resize(inputs);
    }
    return moments;
}

GcpSpec build_gcp_spec(const RunConfig &config) {
    if (config.gcp.subsets) {
        GcpSpec spec = make_gcp_spec(config.state.modes, *config.gcp.subsets);
        return spec;
    }
    return partition_modes(config.state.modes, config.gcp.d, config.gcp.permutation_seed);
}

ClickSource make_click_source(const GaussianModeMoments &moments, Representation representation,
                              const TransmissionMatrix &transmission, std::uint64_t seed) {
    if (representation == Representation::diagonal_p && !all_classical(moments))
        fail(ErrorCode::representation_violation, "diagonal-P sampling requires classical inputs");
    return [moments, representation, transmission, seed](std::size_t first, std::size_t count) {
        return click_moments(propagate(draw_trajectories(moments, representation, seed, first, count), transmission));
    };
}

namespace {

std::uint64_t require_seed(const std::optional<std::uint64_t> &seed, const char *name) {
    if (!seed) fail(ErrorCode::config, std::string("missing required seed seeds.") + name);
    return *seed;
}

std::filesystem::path prepare_output(const RunConfig &config, const RunOptions &options) {
    const std::filesystem::path dir = options.output_dir ? *options.output_dir : config.output_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorCode::io, "cannot create output directory " + dir.string());
    return dir;
}

std::vector<GcpDistribution> simulate_specs(const RunConfig &config, std::span<const GcpSpec> specs,
                                            const RunOptions &options) {
    if (config.ensembles == 0) fail(ErrorCode::config, "run.ensembles must be positive");
    const auto transmission = build_transmission(config);
    const auto moments = build_moments(config, transmission);
    const auto source = make_click_source(moments, config.representation, transmission,
                                          require_seed(config.seeds.ensemble, "ensemble"));
    return simulate_gcp(source, config.ensembles, specs, config.blocks, options.threads);
}

std::pair<std::string, std::string> labels_for(const RunConfig &config, const PatternSet &patterns) {
    std::string first = config.data.label.value_or(patterns.source == PatternSource::classical_fake ? "C" : "E");
    std::string second = config.state.kind == StateKind::pure_squeezed ? "I" : "T";
    return {std::move(first), std::move(second)};
}

const PatternSet &require_patterns(const RunConfig &config, std::optional<PatternSet> &cache) {
    if (!config.data.patterns) fail(ErrorCode::config, "this mode needs [data] patterns");
    if (!cache) cache = load_patterns(*config.data.patterns);
    return *cache;
}

std::uint64_t derived_seed(std::uint64_t base, std::uint64_t attempt) {
    const auto out = Philox4x32::apply(
        {static_cast<std::uint32_t>(attempt), static_cast<std::uint32_t>(attempt >> 32), 0u, 0x7065726du},
        {static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32)});
    return (std::uint64_t{out[0]} << 32) | out[1];
}

}  // namespace

PipelineResult run_pipeline(const RunConfig &config, PipelineMode mode, const RunOptions &options) {
    PipelineResult result;
    const auto dir = prepare_output(config, options);
    auto artifact = [&](const char *name) {
        const auto path = (dir / name).string();
        result.artifacts.push_back(path);
        return path;
    };
    auto log = [&](const std::string &text) {
        if (options.log) *options.log << text;
    };

    switch (mode) {
        case PipelineMode::simulate: {
            const GcpSpec spec = build_gcp_spec(config);
            auto dists = simulate_specs(config, std::span<const GcpSpec>(&spec, 1), options);
            write_gcp_json(artifact("gcp_simulated.json"), dists.front(), config.hash);
            write_gcp_csv(artifact("gcp_simulated.csv"), dists.front(), config.hash);
            log("simulated " + std::to_string(config.ensembles) + " trajectories\n");
            result.distributions = std::move(dists);
            break;
        }
        case PipelineMode::fake: {
            const auto transmission = build_transmission(config);
            const auto moments = build_moments(config, transmission);
            if (config.patterns == 0) fail(ErrorCode::config, "run.patterns (or run.ensembles) must be positive");
            const std::uint64_t seed = require_seed(config.seeds.faker, "faker");
            // The faker keys both its diagonal-P ensemble and its Bernoulli
            // draws on seeds.faker, keeping fakes independent of simulate runs.
            PatternSet patterns = generate_classical_patterns(moments, transmission, config.patterns, seed, seed,
                                                              options.threads);
            patterns.metadata.insert(patterns.metadata.begin(), {"source", "classical_fake"});
            patterns.metadata.emplace_back("config_hash", config.hash);
            patterns.metadata.emplace_back("state", std::string(to_string(config.state.kind)));
            patterns.metadata.emplace_back("t", std::to_string(config.network.t));
            if (config.network.haar_seed) patterns.metadata.emplace_back("haar_seed", std::to_string(*config.network.haar_seed));
            write_patterns(artifact("patterns.txt"), patterns);
            log("wrote " + std::to_string(patterns.size()) + " classical patterns\n");
            break;
        }
        case PipelineMode::compare: {
            std::optional<PatternSet> cache;
            const auto &patterns = require_patterns(config, cache);
            const GcpSpec spec = build_gcp_spec(config);
            const GcpDistribution data = bin_patterns(patterns, spec);
            GcpDistribution theory;
            if (config.data.theory) {
                theory = read_gcp_json(*config.data.theory);
            } else {
                theory = std::move(simulate_specs(config, std::span<const GcpSpec>(&spec, 1), options).front());
            }
            TestReport report = compare_report(data, theory, labels_for(config, patterns));
            write_report_json(artifact("report.json"), report, config.hash);
            log(format_report_table(report));
            result.distributions = {data, theory};
            result.reports.push_back(std::move(report));
            break;
        }
        case PipelineMode::oracle: {
            const auto transmission = build_transmission(config);
            const auto moments = build_moments(config, transmission);
            const GcpSpec spec = build_gcp_spec(config);
            GcpDistribution exact = exact_gcp(output_covariance(moments, transmission), spec, options.threads);
            write_gcp_json(artifact("gcp_exact.json"), exact, config.hash);
            write_gcp_csv(artifact("gcp_exact.csv"), exact, config.hash);
            result.distributions.push_back(std::move(exact));
            break;
        }
        case PipelineMode::permtest: {
            if (config.gcp.subsets) fail(ErrorCode::config, "permtest draws its own partitions; remove gcp.subsets");
            if (config.gcp.n_permutation_tests == 0) fail(ErrorCode::config, "gcp.n_permutation_tests must be positive");
            const std::uint64_t base = require_seed(config.seeds.partition, "partition");
            std::optional<PatternSet> cache;
            const auto &patterns = require_patterns(config, cache);

            const auto available = permutation_count(config.state.modes, config.gcp.d);
            const std::size_t wanted = available < config.gcp.n_permutation_tests
                                           ? static_cast<std::size_t>(available)
                                           : config.gcp.n_permutation_tests;
            std::vector<GcpSpec> specs;
            for (std::uint64_t attempt = 0; specs.size() < wanted && attempt < 64 * wanted + 64; ++attempt) {
                GcpSpec spec = partition_modes(config.state.modes, config.gcp.d, derived_seed(base, attempt));
                auto canonical = spec.subsets;
                std::sort(canonical.begin(), canonical.end());
                const bool duplicate = std::any_of(specs.begin(), specs.end(), [&](const GcpSpec &other) {
                    auto o = other.subsets;
                    std::sort(o.begin(), o.end());
                    return o == canonical;
                });
                if (!duplicate) specs.push_back(std::move(spec));
            }
            if (specs.size() < wanted) log("warning: only " + std::to_string(specs.size()) + " distinct partitions found\n");

            auto theory = simulate_specs(config, specs, options);
            nlohmann::json doc;
            doc["config_hash"] = config.hash;
            doc["tests"] = nlohmann::json::array();
            std::vector<double> zs;
            for (std::size_t i = 0; i < specs.size(); ++i) {
                const GcpDistribution data = bin_patterns(patterns, specs[i]);
                TestReport report = compare_report(data, theory[i], labels_for(config, patterns));
                nlohmann::json entry = nlohmann::json::parse(report_to_json(report, config.hash));
                entry["subsets"] = specs[i].subsets;
                entry["permutation_seed"] = *specs[i].permutation_seed;
                doc["tests"].push_back(std::move(entry));
                zs.push_back(report.z_score);
                result.reports.push_back(std::move(report));
            }
            PermutationSummary summary;
            summary.tests = zs.size();
            if (!zs.empty()) {
                double sum = 0.0, sq = 0.0;
                for (double z : zs) sum += z;
                summary.mean_z = sum / static_cast<double>(zs.size());
                for (double z : zs) sq += (z - summary.mean_z) * (z - summary.mean_z);
                summary.stddev_z = zs.size() > 1 ? std::sqrt(sq / static_cast<double>(zs.size() - 1)) : 0.0;
                summary.min_z = *std::min_element(zs.begin(), zs.end());
                summary.max_z = *std::max_element(zs.begin(), zs.end());
            }
            doc["summary"] = {{"tests", summary.tests},
                              {"mean_z", summary.mean_z},
                              {"stddev_z", summary.stddev_z},
                              {"min_z", summary.min_z},
                              {"max_z", summary.max_z}};
            std::ofstream out(artifact("permtest.json"));
            if (!out) fail(ErrorCode::io, "cannot write permtest.json");
            out << doc.dump(1) << '\n';

            char line[160];
            std::snprintf(line, sizeof line, "%zu permutation tests: mean Z %.4f, sd %.4f, range [%.4f, %.4f]\n",
                          summary.tests, summary.mean_z, summary.stddev_z, summary.min_z, summary.max_z);
            log(line);
            result.distributions = std::move(theory);
            result.permutation_summary = summary;
            break;
        }
    }
    return result;
}

}  // namespace gbs
