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

#include "gbs/io.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include "gbs/config.hpp"
#include "gbs/faker.hpp"
#include "gbs/patterns.hpp"
#include "test_util.hpp"

namespace gbs {
namespace {

TEST(Patterns, ParseSmallFile) {
    const auto p = parse_patterns("0011\n1100\n");
    EXPECT_EQ(p.modes, 4u);
    EXPECT_EQ(p.size(), 2u);
    EXPECT_EQ(p.source, PatternSource::experiment);
    EXPECT_EQ(p.bits, (std::vector<std::uint8_t>{0, 0, 1, 1, 1, 1, 0, 0}));
}

TEST(Patterns, HeadersSetSourceAndMetadata) {
    const auto p = parse_patterns("# source: classical_fake\n# seed: 4\n01\n10\n");
    EXPECT_EQ(p.source, PatternSource::classical_fake);
    EXPECT_EQ(p.size(), 2u);
    ASSERT_EQ(p.metadata.size(), 2u);
    EXPECT_EQ(p.metadata[1], (std::pair<std::string, std::string>{"seed", "4"}));
}

TEST(Patterns, ErrorsNameTheLine) {
    try {
        (void)parse_patterns("21\n", "bad.txt");
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::data);
        EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos) << e.what();
    }
    try {
        (void)parse_patterns("0101\n0101\n011\n", "bad.txt");
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    EXPECT_GBS_ERROR(parse_patterns(""), ErrorCode::data);
    EXPECT_GBS_ERROR(parse_patterns("# only a header\n"), ErrorCode::data);
    EXPECT_GBS_ERROR(load_patterns("/nonexistent/patterns.txt"), ErrorCode::io);
}

TEST(Patterns, FakerRoundTripIsBitIdentical) {
    const auto dir = testing::scratch_dir("patterns_roundtrip");
    const auto moments = derive_moments(GaussianInputSpec{StateKind::thermal, std::vector<double>(16, 0.9), 0.0, 16, std::nullopt});
    const auto patterns =
        generate_classical_patterns(moments, make_transmission(generate_haar_unitary(16, 3), 0.5), 100000, 1, 2);
    write_patterns((dir / "p.txt").string(), patterns);
    const auto back = load_patterns((dir / "p.txt").string());
    EXPECT_EQ(back.bits, patterns.bits);
    EXPECT_EQ(back.modes, patterns.modes);
    EXPECT_EQ(back.source, PatternSource::classical_fake);
}

TEST(Sha256, KnownDigests) {
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

GcpDistribution sample_distribution() {
    GcpDistribution d;
    d.spec = partition_modes(4, 2, 9);
    d.shape = d.spec.shape();
    d.probabilities = {0.1, 0.2, 1.0 / 3.0, 0.05, 0.05, 0.1, 0.0, 1e-17, 0.16666666666666663};
    d.sigma = {1e-3, 2e-3, 3e-3, 0.0, 1e-4, 1e-5, 0.0, 1e-9, 4e-3};
    d.raw_counts = std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9};
    d.source = GcpSource::patterns;
    d.samples = 45;
    return d;
}

TEST(GcpFiles, JsonRoundTrip) {
    const auto d = sample_distribution();
    const auto text = gcp_to_json(d, "abc123");
    const auto json = nlohmann::json::parse(text);
    EXPECT_EQ(json.at("config_hash"), "abc123");
    EXPECT_EQ(json.at("source"), "patterns");
    const auto back = gcp_from_json(text);
    EXPECT_EQ(back.probabilities, d.probabilities);
    EXPECT_EQ(back.sigma, d.sigma);
    EXPECT_EQ(back.raw_counts, d.raw_counts);
    EXPECT_EQ(back.shape, d.shape);
    EXPECT_EQ(back.spec.subsets, d.spec.subsets);
    EXPECT_EQ(back.spec.permutation_seed, d.spec.permutation_seed);
    EXPECT_EQ(back.samples, d.samples);
    EXPECT_EQ(back.source, d.source);

    EXPECT_GBS_ERROR(gcp_from_json("{\"shape\": [2]}"), ErrorCode::data);
    EXPECT_GBS_ERROR(gcp_from_json("not json"), ErrorCode::data);
}

TEST(GcpFiles, CsvCarriesHashAndOneRowPerBin) {
    const auto dir = testing::scratch_dir("gcp_csv");
    write_gcp_csv((dir / "g.csv").string(), sample_distribution(), "feed");
    const auto text = testing::read_text(dir / "g.csv");
    EXPECT_EQ(text.rfind("# config_hash=feed\n", 0), 0u);
    EXPECT_NE(text.find("m1,m2,probability,sigma,counts\n"), std::string::npos);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 11);
}

TEST(Reports, JsonAndTable) {
    TestReport r;
    r.chi_square = 63.0;
    r.k = 63;
    r.z_score = 0.0594;
    r.labels = {"C", "T"};
    r.per_bin.push_back({{3}, 0.5});
    const auto json = nlohmann::json::parse(report_to_json(r, "h"));
    EXPECT_EQ(json.at("statistic"), "Z_CT");
    EXPECT_EQ(json.at("k"), 63);
    EXPECT_EQ(json.at("config_hash"), "h");
    EXPECT_NE(format_report_table(r).find("Z_CT"), std::string::npos);
}

constexpr const char *kConfig = R"(
[state]
kind = thermal
r = 1.0
modes = 4

[network]
haar_seed = 7
t = 0.5

[gcp]
subsets = 0 1; 2 3

[run]
ensembles = 1.2e6
representation = diagonal_P

[seeds]
ensemble = 11
faker = 12
)";

TEST(RunConfig, ParsesSectionsAndBroadcastsR) {
    const auto cfg = parse_run_config(kConfig, ".");
    EXPECT_EQ(cfg.state.kind, StateKind::thermal);
    EXPECT_EQ(cfg.state.r, (std::vector<double>{1.0, 1.0, 1.0, 1.0}));
    EXPECT_EQ(cfg.network.haar_seed, std::optional<std::uint64_t>(7));
    EXPECT_EQ(cfg.network.t, 0.5);
    ASSERT_TRUE(cfg.gcp.subsets.has_value());
    EXPECT_EQ(*cfg.gcp.subsets, (std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}}));
    EXPECT_EQ(cfg.gcp.d, 2u);
    EXPECT_EQ(cfg.ensembles, 1200000u);
    EXPECT_EQ(cfg.patterns, 1200000u);
    EXPECT_EQ(cfg.blocks, 100u);
    EXPECT_EQ(cfg.representation, Representation::diagonal_p);
    EXPECT_EQ(cfg.seeds.ensemble, std::optional<std::uint64_t>(11));
    EXPECT_FALSE(cfg.seeds.partition.has_value());
    EXPECT_EQ(cfg.hash.size(), 64u);
}

TEST(RunConfig, OverridesChangeTheHash) {
    const auto base = parse_run_config(kConfig, ".");
    const auto same = parse_run_config(kConfig, ".");
    EXPECT_EQ(base.hash, same.hash);
    const auto seeded = parse_run_config(kConfig, ".", {"ensemble=99", "haar_seed=3", "run.blocks=50"});
    EXPECT_EQ(seeded.seeds.ensemble, std::optional<std::uint64_t>(99));
    EXPECT_EQ(seeded.network.haar_seed, std::optional<std::uint64_t>(3));
    EXPECT_EQ(seeded.blocks, 50u);
    EXPECT_NE(seeded.hash, base.hash);
    EXPECT_GBS_ERROR(parse_run_config(kConfig, ".", {"noequals"}), ErrorCode::config);
}

TEST(RunConfig, RejectsBadConfigs) {
    EXPECT_GBS_ERROR(parse_run_config("[state]\nkind = thermal\n", "."), ErrorCode::config);
    EXPECT_GBS_ERROR(parse_run_config("[state]\nkind = laser\nr = 1\nmodes = 2\n[network]\nhaar_seed = 1\n", "."),
                     ErrorCode::config);
    EXPECT_GBS_ERROR(parse_run_config("[state]\nkind = thermal\nr = 1\nmodes = 2\n", "."), ErrorCode::config);
    EXPECT_GBS_ERROR(parse_run_config("[state]\nkind = thermal\nr = 1\nmodes = 2\n[network]\nhaar_seed = 1\n"
                                      "matrix_file = missing.json\n",
                                      "."),
                     ErrorCode::config);
    EXPECT_GBS_ERROR(parse_run_config("[state]\nkind = thermalized\nr = 1\nepsilon = 2\nmodes = 2\n"
                                      "[network]\nhaar_seed = 1\n",
                                      "."),
                     ErrorCode::config);
    EXPECT_GBS_ERROR(parse_run_config("[state]\nkind = thermal\nr = 1\nmodes = 2\n[network]\nhaar_seed = -4\n", "."),
                     ErrorCode::config);
    EXPECT_GBS_ERROR(load_run_config("/nonexistent/run.ini"), ErrorCode::config);
}

TEST(RunConfig, ReferencedFileContentEntersTheHash) {
    const auto dir = testing::scratch_dir("config_files");
    write_matrix_json((dir / "t.json").string(), ComplexMatrix::Identity(2, 2));
    const std::string text = "[state]\nkind = thermal\nr = 1\nmodes = 2\n[network]\nmatrix_file = t.json\n";
    testing::write_text(dir / "run.ini", text);
    const auto first = load_run_config((dir / "run.ini").string());
    EXPECT_EQ(*first.network.matrix_file, (dir / "t.json").string());
    write_matrix_json((dir / "t.json").string(), ComplexMatrix::Identity(2, 2) * 0.5);
    const auto second = load_run_config((dir / "run.ini").string());
    EXPECT_NE(first.hash, second.hash);
}

}  // namespace
}  // namespace gbs
