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

#pragma once

// Built-in experiment presets, written in the config text format so they go
// through the same parser and validation as user files.
//
// Figure rows use an SPP of order 2 (so m_V = 2), SLM walk-off phi = pi/2,
// and m_SLM = m_H - 2.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "vecvortex/config.hpp"

namespace vecvortex {

inline constexpr int kFigureSppOrder = 2;
inline constexpr std::array<int, 5> kFigure5RowsMH{-2, -1, 0, 1, 3};
inline constexpr std::array<int, 5> kFigure7RowsMH{4, 5, 6, -3, -4};

inline constexpr std::array<std::string_view, 10> kPresetNames{
    "sagnac-eq1", "spp-slm-eq4", "table1", "table1-separable", "table1-nonseparable",
    "figure4",    "figure5",     "figure6", "figure7",         "dual-slm"};

namespace preset_detail {

inline const char *kAllImages = R"(["H", "V", "D", "A", "L", "R"])";
inline const char *kCrossedImages = R"(["D", "A", "L", "R"])";

inline std::string output(std::string_view name, std::string_view images) {
    return "\n[output]\nname = \"" + std::string(name) + "\"\nimages = " + std::string(images) + "\n";
}

inline std::string spp_slm_text(std::string_view name, int m_spp, int m_slm, std::string_view images) {
    std::string t = "# H-polarized Gaussian -> HWP(22.5 deg) -> SPP -> SLM\n"
                    "[source]\npolarization = \"H\"\nmode = 0\n\n"
                    "[[chain]]\ntype = \"HWP\"\ntheta_deg = 22.5\n\n";
    if (m_spp != 0) t += "[[chain]]\ntype = \"SPP\"\nm = " + std::to_string(m_spp) + "\n\n";
    t += "[[chain]]\ntype = \"SLM\"\nm = " + std::to_string(m_slm) + "\nphi_deg = 90\n";
    return t + output(name, images);
}

inline std::string figure_row_text(int m_h, std::string_view images) {
    const std::string name = "mH" + std::to_string(m_h);
    return spp_slm_text(name, kFigureSppOrder, m_h - kFigureSppOrder, images);
}

}  // namespace preset_detail

/// Config text for every row of a preset; empty if the name is unknown.
inline std::vector<std::string> preset_texts(std::string_view name) {
    using namespace preset_detail;
    if (name == "sagnac-eq1") {
        return {"# Polarizing Sagnac loop with an SPP of order 2: (|H>|2> + |V>|-2>)/sqrt2\n"
                "[source]\nkind = \"sagnac\"\nmode = 2\n" +
                output("sagnac_m2", kAllImages)};
    }
    if (name == "spp-slm-eq4") return {spp_slm_text("spp2_slm1", 2, 1, kAllImages)};
    if (name == "table1-separable") return {spp_slm_text("separable", 0, 0, kAllImages)};
    if (name == "table1-nonseparable") return {spp_slm_text("nonseparable", 2, -4, kAllImages)};
    if (name == "table1") {
        return {spp_slm_text("separable", 0, 0, kAllImages), spp_slm_text("nonseparable", 2, -4, kAllImages)};
    }
    if (name == "figure4" || name == "figure5") {
        std::vector<std::string> rows;
        for (int m_h : kFigure5RowsMH) rows.push_back(figure_row_text(m_h, kAllImages));
        return rows;
    }
    if (name == "figure6" || name == "figure7") {
        std::vector<std::string> rows;
        for (int m_h : kFigure7RowsMH) rows.push_back(figure_row_text(m_h, kCrossedImages));
        return rows;
    }
    if (name == "dual-slm") {
        return {"# D-polarized Gaussian -> SLM(3) -> HWP(45 deg) -> SLM(1) -> HWP(45 deg)\n"
                "[source]\npolarization = \"D\"\nmode = 0\n\n"
                "[[chain]]\ntype = \"SLM\"\nm = 3\nphi = 0\n\n"
                "[[chain]]\ntype = \"HWP\"\ntheta_deg = 45\n\n"
                "[[chain]]\ntype = \"SLM\"\nm = 1\nphi = 0\n\n"
                "[[chain]]\ntype = \"HWP\"\ntheta_deg = 45\n" +
                output("dual_slm_3_1", kAllImages)};
    }
    return {};
}

inline bool is_preset(std::string_view name) {
    return std::find(kPresetNames.begin(), kPresetNames.end(), name) != kPresetNames.end();
}

inline std::vector<PipelineConfig> preset_configs(std::string_view name) {
    if (!is_preset(name)) throw ConfigError("unknown preset '" + std::string(name) + "'");
    std::vector<PipelineConfig> rows;
    for (const std::string &t : preset_texts(name)) rows.push_back(parse_config(t));
    return rows;
}

}  // namespace vecvortex
