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

#include <openssl/evp.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "gbs/error.hpp"
#include "gbs/patterns.hpp"

namespace gbs {

using nlohmann::json;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::ofstream open_output(const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io, "cannot write " + path);
    return out;
}

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

}  // namespace

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1)
        fail(ErrorCode::io, "SHA-256 computation failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return hex.str();
}

std::string sha256_file(const std::string &path) { return sha256_hex(read_file(path)); }

// ---- patterns --------------------------------------------------------------

std::string_view to_string(PatternSource source) {
    return source == PatternSource::experiment ? "experiment" : "classical_fake";
}

PatternSet parse_patterns(std::string_view text, const std::string &origin) {
    PatternSet out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() : end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line.front() == '#') {
            line.remove_prefix(1);
            const auto colon = line.find(':');
            if (colon == std::string_view::npos) continue;
            auto trim = [](std::string_view s) {
                while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
                while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
                return std::string(s);
            };
            std::string key = trim(line.substr(0, colon));
            std::string value = trim(line.substr(colon + 1));
            if (key == "source" && value == "classical_fake") out.source = PatternSource::classical_fake;
            out.metadata.emplace_back(std::move(key), std::move(value));
            continue;
        }
        if (out.modes == 0) out.modes = line.size();
        if (line.size() != out.modes)
            fail(ErrorCode::data, origin + ": line " + std::to_string(line_no) + " has " + std::to_string(line.size()) +
                                      " characters, expected " + std::to_string(out.modes));
        for (char c : line) {
            if (c != '0' && c != '1')
                fail(ErrorCode::data, origin + ": line " + std::to_string(line_no) + " contains '" + std::string(1, c) +
                                          "' (expected only 0/1)");
            out.bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
    }
    if (out.size() == 0) fail(ErrorCode::data, origin + ": no patterns found");
    return out;
}

PatternSet load_patterns(const std::string &path) { return parse_patterns(read_file(path), path); }

void write_patterns(const std::string &path, const PatternSet &patterns) {
    auto out = open_output(path);
    bool has_source = false;
    for (const auto &[key, value] : patterns.metadata) has_source |= key == "source";
    if (!has_source) out << "# source: " << to_string(patterns.source) << '\n';
    for (const auto &[key, value] : patterns.metadata) out << "# " << key << ": " << value << '\n';
    std::string line(patterns.modes + 1, '\n');
    for (std::size_t p = 0; p < patterns.size(); ++p) {
        const auto bits = patterns.pattern(p);
        for (std::size_t j = 0; j < patterns.modes; ++j) line[j] = static_cast<char>('0' + bits[j]);
        out.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
    if (!out) fail(ErrorCode::io, "failed writing " + path);
}

// ---- GCP distributions -----------------------------------------------------

std::string gcp_to_json(const GcpDistribution &d, const std::string &config_hash) {
    json doc;
    doc["config_hash"] = config_hash;
    doc["source"] = std::string(to_string(d.source));
    doc["samples"] = d.samples;
    json spec;
    spec["modes"] = d.spec.modes;
    spec["subsets"] = d.spec.subsets;
    spec["permutation_seed"] = d.spec.permutation_seed ? json(*d.spec.permutation_seed) : json(nullptr);
    doc["spec"] = std::move(spec);
    doc["shape"] = d.shape;
    doc["probabilities"] = d.probabilities;
    doc["sigma"] = d.sigma;
    if (d.raw_counts) doc["raw_counts"] = *d.raw_counts;
    return doc.dump(1) + "\n";
}

GcpDistribution gcp_from_json(std::string_view text) {
    try {
        const json doc = json::parse(text);
        GcpDistribution d;
        d.source = parse_gcp_source(doc.at("source").get<std::string>());
        d.samples = doc.at("samples").get<std::uint64_t>();
        const auto &spec = doc.at("spec");
        d.spec = make_gcp_spec(spec.at("modes").get<std::size_t>(),
                               spec.at("subsets").get<std::vector<std::vector<std::size_t>>>());
        if (spec.contains("permutation_seed") && !spec.at("permutation_seed").is_null())
            d.spec.permutation_seed = spec.at("permutation_seed").get<std::uint64_t>();
        d.shape = doc.at("shape").get<std::vector<std::size_t>>();
        d.probabilities = doc.at("probabilities").get<std::vector<double>>();
        d.sigma = doc.at("sigma").get<std::vector<double>>();
        if (doc.contains("raw_counts")) d.raw_counts = doc.at("raw_counts").get<std::vector<std::uint64_t>>();
        if (d.shape != d.spec.shape() || d.probabilities.size() != d.spec.bin_count() ||
            d.sigma.size() != d.probabilities.size() ||
            (d.raw_counts && d.raw_counts->size() != d.probabilities.size()))
            fail(ErrorCode::data, "GCP file arrays do not match its shape");
        return d;
    } catch (const json::exception &e) {
        fail(ErrorCode::data, std::string("malformed GCP file: ") + e.what());
    }
}

void write_gcp_json(const std::string &path, const GcpDistribution &distribution, const std::string &config_hash) {
    auto out = open_output(path);
    out << gcp_to_json(distribution, config_hash);
}

GcpDistribution read_gcp_json(const std::string &path) { return gcp_from_json(read_file(path)); }

void write_gcp_csv(const std::string &path, const GcpDistribution &d, const std::string &config_hash) {
    auto out = open_output(path);
    out << "# config_hash=" << config_hash << '\n';
    for (std::size_t a = 0; a < d.shape.size(); ++a) out << 'm' << a + 1 << ',';
    out << "probability,sigma,counts\n";
    for (std::size_t i = 0; i < d.bin_count(); ++i) {
        for (std::size_t m : d.unflatten(i)) out << m << ',';
        out << format_double(d.probabilities[i]) << ',' << format_double(d.sigma[i]) << ',';
        if (d.raw_counts) out << (*d.raw_counts)[i];
        out << '\n';
    }
}

// ---- reports ---------------------------------------------------------------

std::string report_to_json(const TestReport &report, const std::string &config_hash) {
    json doc;
    doc["config_hash"] = config_hash;
    doc["labels"] = {report.labels.first, report.labels.second};
    doc["statistic"] = report.statistic_name();
    doc["chi_square"] = report.chi_square;
    doc["k"] = report.k;
    doc["chi_square_per_bin"] = report.chi_square / static_cast<double>(report.k);
    doc["z_score"] = report.z_score;
    json bins = json::array();
    for (const auto &bin : report.per_bin) bins.push_back({{"m", bin.index}, {"normalized_difference", bin.normalized_difference}});
    doc["per_bin"] = std::move(bins);
    doc["warnings"] = report.warnings;
    return doc.dump(1) + "\n";
}

void write_report_json(const std::string &path, const TestReport &report, const std::string &config_hash) {
    auto out = open_output(path);
    out << report_to_json(report, config_hash);
}

std::string format_report_table(const TestReport &report) {
    char line[160];
    std::string out;
    std::snprintf(line, sizeof line, "%-8s %14s %8s %12s %10s\n", "test", "chi^2", "k", "chi^2/k", "Z");
    out += line;
    std::snprintf(line, sizeof line, "%-8s %14.4f %8zu %12.4f %10.4f\n", report.statistic_name().c_str(),
                  report.chi_square, report.k, report.chi_square / static_cast<double>(report.k), report.z_score);
    out += line;
    for (const auto &w : report.warnings) out += "warning: " + w + "\n";
    return out;
}

}  // namespace gbs
