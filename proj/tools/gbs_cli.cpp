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

// gbs: command-line front end for the phase-space GBS toolkit.
//
//   gbs simulate --config run.ini [--out DIR] [--threads N] [--seed-override K=V]...
//   gbs fake | compare | oracle | permtest   (same flags)
//
// Exit codes: 0 success, 2 config error, 3 data error, 4 numerical guard tripped.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gbs/config.hpp"
#include "gbs/error.hpp"
#include "gbs/pipeline.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Gaussian boson sampling phase-space simulator and validator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    unsigned threads = 1;
    std::vector<std::string> overrides;
    bool quiet = false;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"simulate", "Phase-space grouped-count distribution"},
        {"fake", "Classical diagonal-P fake click patterns"},
        {"compare", "Chi-square / Z-score of binned patterns against theory"},
        {"oracle", "Exact grouped-count distribution (M <= 16)"},
        {"permtest", "Comparisons over random mode partitions"},
    };
    for (const auto &[name, help] : commands) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "Run configuration (INI)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "Output directory (overrides [outputs] directory)");
        sub->add_option("--threads", threads, "Worker threads; results do not depend on it")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed-override", overrides, "KEY=VALUE seed override, repeatable");
        sub->add_flag("-q,--quiet", quiet, "Suppress the summary table");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string mode_name = app.get_subcommands().front()->get_name();
    try {
        const gbs::RunConfig config = gbs::load_run_config(config_path, overrides);
        gbs::RunOptions options;
        options.threads = threads;
        if (!out_dir.empty()) options.output_dir = out_dir;
        options.log = quiet ? nullptr : &std::cout;
        const auto result = gbs::run_pipeline(config, gbs::parse_pipeline_mode(mode_name), options);
        for (const auto &path : result.artifacts)
            if (!quiet) std::cout << "wrote " << path << '\n';
        return result.exit_status;
    } catch (const gbs::Error &e) {
        std::cerr << "error[" << gbs::to_string(e.code()) << "]: " << e.what() << '\n';
        return gbs::exit_code(e.code());
    } catch (const std::exception &e) {
        std::cerr << "error[internal]: " << e.what() << '\n';
        return 1;
    }
}
