// Copyright 2026 The vecvortex Authors
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

// Command-line front end: run config files or built-in presets, write PGM
// projection images and a JSON measurement report.
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vecvortex/vecvortex.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Overrides {
    std::optional<std::string> out_dir;
    std::optional<int> grid_n;
};

void apply_overrides(vecvortex::PipelineConfig &cfg, const Overrides &ov, const std::string &default_dir) {
    if (ov.out_dir) {
        cfg.output_dir = *ov.out_dir;
    } else if (!default_dir.empty()) {
        cfg.output_dir = default_dir;
    }
    if (ov.grid_n) {
        if (*ov.grid_n < 16 || *ov.grid_n % 2 != 0) throw vecvortex::ConfigError("--grid-n: grid.n must be even, >= 16");
        cfg.grid = vecvortex::make_grid(*ov.grid_n, cfg.grid.extent);
    }
}

void emit(const vecvortex::Json &report, const std::optional<std::string> &path) {
    const std::string text = vecvortex::dump_json(report);
    if (!path) {
        std::cout << text;
        return;
    }
    std::ofstream os(*path, std::ios::binary | std::ios::trunc);
    if (!os) throw vecvortex::PipelineError("cannot write report '" + *path + "'");
    os << text;
    if (!os) throw vecvortex::PipelineError("write failed for report '" + *path + "'");
}

void print_summary(const vecvortex::MeasurementReport &r) {
    std::printf("%-14s", r.config.name.c_str());
    if (r.dop_value) std::printf("  DOP = %.6f", *r.dop_value);
    if (r.linear_entropy_value) std::printf("  S_L = %.6f", *r.linear_entropy_value);
    for (const auto &[b, count] : r.petals) {
        if (count) std::printf("  %s:%d", std::string(vecvortex::basis_name(b)).c_str(), *count);
    }
    std::printf("\n");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"vecvortex: simulate polarization-OAM non-separable light states"};
    app.require_subcommand(1);
    app.fallthrough();

    Overrides ov;
    std::optional<std::string> json_report;
    bool seedless = false;
    app.add_option("--out", ov.out_dir, "Output directory for images (overrides the config)");
    app.add_option("--grid-n", ov.grid_n, "Override grid samples per side (even, >= 16)");
    app.add_option("--json-report", json_report, "Write the JSON report here instead of stdout");
    app.add_flag("--seedless", seedless, "Reserved; the simulator is deterministic and rejects this flag");

    std::string config_path;
    auto *run = app.add_subcommand("run", "Run a config file");
    run->add_option("config", config_path, "Config file")->required();

    std::string preset_name;
    auto *preset = app.add_subcommand("preset", "Run a built-in preset");
    preset->add_option("name", preset_name, "Preset name (see list-presets)")->required();

    auto *list = app.add_subcommand("list-presets", "List built-in presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    if (seedless) {
        std::cerr << "error: --seedless is reserved; the simulator has no random state\n" << app.help();
        return kExitConfig;
    }

    try {
        if (list->parsed()) {
            for (auto name : vecvortex::kPresetNames) std::cout << name << "\n";
            return 0;
        }
        if (run->parsed()) {
            vecvortex::PipelineConfig cfg = vecvortex::load_config(config_path);
            apply_overrides(cfg, ov, "");
            const auto report = vecvortex::run_pipeline(cfg);
            if (json_report) print_summary(report);
            emit(vecvortex::report_json(report), json_report);
            return 0;
        }
        if (!vecvortex::is_preset(preset_name)) {
            std::cerr << "error: unknown preset '" << preset_name << "'\n" << app.help();
            return kExitConfig;
        }
        std::vector<vecvortex::PipelineConfig> rows = vecvortex::preset_configs(preset_name);
        std::vector<vecvortex::MeasurementReport> reports;
        for (auto &cfg : rows) {
            apply_overrides(cfg, ov, "vecvortex-out/" + preset_name);
            reports.push_back(vecvortex::run_pipeline(cfg));
        }
        if (json_report) {
            for (const auto &r : reports) print_summary(r);
        }
        emit(vecvortex::preset_report_json(preset_name, reports), json_report);
        return 0;
    } catch (const vecvortex::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
