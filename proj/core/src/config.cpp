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

#include "gbs/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "gbs/error.hpp"
#include "gbs/io.hpp"

namespace gbs {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(const std::string &key, const std::string &text) {
    std::istringstream in(text);
    T value{};
    in >> value;
    if (!in || !(in >> std::ws).eof()) fail(ErrorCode::config, key + ": cannot parse '" + text + "'");
    return value;
}

std::uint64_t parse_seed(const std::string &key, const std::string &text) {
    if (!text.empty() && text.front() == '-') fail(ErrorCode::config, key + ": seeds are non-negative integers");
    return parse_number<std::uint64_t>(key, text);
}

std::size_t parse_count(const std::string &key, const std::string &text) {
    if (!text.empty() && text.front() == '-') fail(ErrorCode::config, key + ": expected a non-negative integer");
    // accept scientific notation such as 1.2e6 for ensemble sizes
    const double value = parse_number<double>(key, text);
    if (value < 0 || value != static_cast<double>(static_cast<std::size_t>(value)))
        fail(ErrorCode::config, key + ": expected a non-negative integer");
    return static_cast<std::size_t>(value);
}

std::vector<double> parse_list(const std::string &key, const std::string &text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_number<double>(key, item));
    }
    if (out.empty()) fail(ErrorCode::config, key + ": empty list");
    return out;
}

std::vector<std::vector<std::size_t>> parse_subsets(const std::string &text) {
    std::vector<std::vector<std::size_t>> out;
    std::string group;
    std::istringstream in(text);
    while (std::getline(in, group, ';')) {
        std::istringstream items(group);
        std::vector<std::size_t> subset;
        std::string token;
        while (items >> token) {
            if (token.back() == ',') token.pop_back();
            if (!token.empty()) subset.push_back(parse_seed("gcp.subsets", token));
        }
        if (!subset.empty()) out.push_back(std::move(subset));
    }
    if (out.empty()) fail(ErrorCode::config, "gcp.subsets: no subsets given");
    return out;
}

std::string resolve(const std::string &base_dir, const std::string &path) {
    std::filesystem::path p(path);
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    return p.lexically_normal().string();
}

void apply_override(pt::ptree &tree, const std::string &entry) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) fail(ErrorCode::config, "override '" + entry + "' is not KEY=VALUE");
    std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key.find('.') == std::string::npos) key = key == "haar_seed" ? "network.haar_seed" : "seeds." + key;
    tree.put(key, value);
}

}  // namespace

RunConfig parse_run_config(const std::string &text, const std::string &base_dir,
                           const std::vector<std::string> &overrides) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        fail(ErrorCode::config, e.what());
    }
    for (const auto &entry : overrides) apply_override(tree, entry);

    auto get = [&](const std::string &key) -> std::optional<std::string> {
        if (auto v = tree.get_optional<std::string>(key)) return trim(*v);
        return std::nullopt;
    };
    auto require = [&](const std::string &key) {
        auto v = get(key);
        if (!v || v->empty()) fail(ErrorCode::config, "missing required key " + key);
        return *v;
    };

    RunConfig cfg;
    std::ostringstream digest_extra;

    // [state]
    cfg.state.kind = parse_state_kind(require("state.kind"));
    cfg.state.modes = parse_count("state.modes", require("state.modes"));
    if (cfg.state.modes == 0) fail(ErrorCode::config, "state.modes must be positive");
    const std::size_t inputs = get("state.inputs") ? parse_count("state.inputs", *get("state.inputs")) : cfg.state.modes;
    if (cfg.state.kind != StateKind::vacuum || get("state.r")) {
        auto r = parse_list("state.r", require("state.r"));
        if (r.size() == 1 && inputs > 1) r.assign(inputs, r.front());
        cfg.state.r = std::move(r);
    }
    if (auto eps = get("state.epsilon")) cfg.state.epsilon = parse_number<double>("state.epsilon", *eps);
    if (auto n = get("state.n")) {
        auto photons = parse_list("state.n", *n);
        if (photons.size() == 1 && cfg.state.r.size() > 1) photons.assign(cfg.state.r.size(), photons.front());
        cfg.state.photon_numbers = std::move(photons);
    }
    try {
        (void)derive_moments(cfg.state);
    } catch (const Error &e) {
        fail(ErrorCode::config, std::string("invalid [state]: ") + e.what());
    }

    // [network]
    if (auto seed = get("network.haar_seed")) cfg.network.haar_seed = parse_seed("network.haar_seed", *seed);
    if (auto file = get("network.matrix_file")) {
        cfg.network.matrix_file = resolve(base_dir, *file);
        if (!std::filesystem::exists(*cfg.network.matrix_file))
            fail(ErrorCode::config, "network.matrix_file does not exist: " + *cfg.network.matrix_file);
        digest_extra << "file network.matrix_file " << sha256_file(*cfg.network.matrix_file) << '\n';
    }
    if (cfg.network.haar_seed.has_value() == cfg.network.matrix_file.has_value())
        fail(ErrorCode::config, "[network] needs exactly one of haar_seed or matrix_file");
    if (auto t = get("network.t")) cfg.network.t = parse_number<double>("network.t", *t);
    if (!(cfg.network.t >= 0.0)) fail(ErrorCode::config, "network.t must be non-negative");

    // [gcp]
    if (auto d = get("gcp.d")) cfg.gcp.d = parse_count("gcp.d", *d);
    if (auto subsets = get("gcp.subsets")) {
        cfg.gcp.subsets = parse_subsets(*subsets);
        cfg.gcp.d = cfg.gcp.subsets->size();
    }
    if (auto seed = get("gcp.permutation_seed")) cfg.gcp.permutation_seed = parse_seed("gcp.permutation_seed", *seed);
    if (auto n = get("gcp.n_permutation_tests")) cfg.gcp.n_permutation_tests = parse_count("gcp.n_permutation_tests", *n);

    // [run]
    if (auto e = get("run.ensembles")) cfg.ensembles = parse_count("run.ensembles", *e);
    if (auto b = get("run.blocks")) cfg.blocks = parse_count("run.blocks", *b);
    if (auto r = get("run.representation")) cfg.representation = parse_representation(*r);
    cfg.patterns = get("run.patterns") ? parse_count("run.patterns", *get("run.patterns")) : cfg.ensembles;

    // [seeds]
    if (auto s = get("seeds.ensemble")) cfg.seeds.ensemble = parse_seed("seeds.ensemble", *s);
    if (auto s = get("seeds.faker")) cfg.seeds.faker = parse_seed("seeds.faker", *s);
    if (auto s = get("seeds.partition")) cfg.seeds.partition = parse_seed("seeds.partition", *s);

    // [outputs]
    if (auto dir = get("outputs.directory")) cfg.output_dir = resolve(base_dir, *dir);

    // [data]
    for (const char *key : {"data.patterns", "data.theory"}) {
        if (auto file = get(key)) {
            const std::string path = resolve(base_dir, *file);
            if (!std::filesystem::exists(path)) fail(ErrorCode::config, std::string(key) + " does not exist: " + path);
            (std::string(key) == "data.patterns" ? cfg.data.patterns : cfg.data.theory) = path;
            digest_extra << "file " << key << ' ' << sha256_file(path) << '\n';
        }
    }
    if (auto label = get("data.label")) cfg.data.label = *label;

    std::ostringstream canonical;
    pt::write_ini(canonical, tree);
    cfg.canonical = canonical.str() + digest_extra.str();
    cfg.hash = sha256_hex(cfg.canonical);
    return cfg;
}

RunConfig load_run_config(const std::string &path, const std::vector<std::string> &overrides) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::config, "cannot open config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    const auto base = std::filesystem::path(path).parent_path().string();
    return parse_run_config(text.str(), base, overrides);
}

}  // namespace gbs
