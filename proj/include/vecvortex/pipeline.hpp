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

// End-to-end experiment: source -> element chain -> analyzers -> report.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vecvortex/config.hpp"
#include "vecvortex/elements.hpp"
#include "vecvortex/measurement.hpp"
#include "vecvortex/pgm.hpp"

namespace vecvortex {

/// Failure while executing a valid configuration.
class PipelineError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct MeasurementReport {
    PipelineConfig config;
    std::optional<ProjectionPowers> powers;
    std::optional<StokesVector> stokes_vector;
    std::optional<double> dop_value;
    std::optional<double> linear_entropy_value;
    std::optional<PolDensityMatrix> density_matrix;
    std::vector<std::pair<Basis, std::optional<int>>> petals;
    std::vector<std::pair<Basis, std::string>> image_files;
};

inline VectorField build_source(const PipelineConfig &cfg) {
    if (cfg.source.kind == SourceKind::kSagnac) return sagnac_generate(cfg.source.mode, cfg.grid, cfg.source.waist);
    return VectorField::product(cfg.source.polarization, lg_mode(cfg.grid, cfg.source.mode, cfg.source.waist));
}

/// Field at the analyzer plane.
inline VectorField prepare_state(const PipelineConfig &cfg) {
    VectorField src = [&] {
        try {
            return build_source(cfg);
        } catch (const std::exception &e) {
            throw PipelineError(std::string("source: ") + e.what());
        }
    }();
    try {
        if (cfg.model == VortexModel::kPhaseMask) return run_chain(src, cfg.chain);
        const ModeLadder ladder(cfg.grid, cfg.source.waist);
        return run_chain(src, cfg.chain, ladder);
    } catch (const std::exception &e) {
        throw PipelineError(std::string("chain: ") + e.what());
    }
}

inline std::string image_file_name(const PipelineConfig &cfg, Basis b) {
    return cfg.name + "_" + std::string(basis_name(b)) + ".pgm";
}

struct RunOptions {
    bool write_images = true;
};

inline MeasurementReport run_pipeline(const PipelineConfig &cfg, RunOptions opts = {}) {
    const VectorField state = prepare_state(cfg);
    MeasurementReport rep{cfg};
    try {
        const bool need_powers = cfg.wants(Measurement::kPowers) || cfg.wants(Measurement::kStokes) ||
                                 cfg.wants(Measurement::kDop) || cfg.wants(Measurement::kLinearEntropy);
        if (need_powers) {
            const ProjectionPowers p = projection_powers(state);
            const StokesVector s = stokes(p);
            const double d = dop(s);
            if (cfg.wants(Measurement::kPowers)) rep.powers = p;
            if (cfg.wants(Measurement::kStokes)) rep.stokes_vector = s;
            if (cfg.wants(Measurement::kDop)) rep.dop_value = d;
            if (cfg.wants(Measurement::kLinearEntropy)) rep.linear_entropy_value = linear_entropy(d);
        }
        if (cfg.wants(Measurement::kDensityMatrix)) rep.density_matrix = reduced_polarization_matrix(state);
    } catch (const std::exception &e) {
        throw PipelineError(std::string("measure: ") + e.what());
    }

    std::vector<Basis> petal_bases = cfg.images;
    if (petal_bases.empty()) petal_bases.assign(kAllBases.begin(), kAllBases.end());
    std::vector<std::pair<Basis, Image>> images;
    for (Basis b : cfg.images) images.emplace_back(b, intensity_image(state, basis(b)));
    if (cfg.wants(Measurement::kPetals)) {
        for (Basis b : petal_bases) {
            auto it = std::find_if(images.begin(), images.end(), [&](const auto &p) { return p.first == b; });
            const Image img = it != images.end() ? it->second : intensity_image(state, basis(b));
            rep.petals.emplace_back(b, img.max() > 0.0 ? std::optional<int>(count_petals(img)) : std::nullopt);
        }
    }

    if (!images.empty()) {
        const std::filesystem::path dir(cfg.output_dir);
        try {
            if (opts.write_images) std::filesystem::create_directories(dir);
            for (const auto &[b, img] : images) {
                const std::string file = image_file_name(cfg, b);
                if (opts.write_images) write_pgm(img, dir / file);
                rep.image_files.emplace_back(b, file);
            }
        } catch (const std::exception &e) {
            throw PipelineError(std::string("write: ") + e.what());
        }
    }
    return rep;
}

// JSON ---------------------------------------------------------------------

using Json = nlohmann::ordered_json;

inline Json jones_json(const JonesVector &j) { return Json::array({j.h.real(), j.h.imag(), j.v.real(), j.v.imag()}); }

inline Json element_json(const ElementSpec &e) {
    Json j;
    j["type"] = element_name(e);
    if (auto *w = std::get_if<element::Hwp>(&e)) j["theta"] = w->theta;
    if (auto *q = std::get_if<element::Qwp>(&e)) j["theta"] = q->theta;
    if (auto *s = std::get_if<element::Spp>(&e)) j["m"] = s->m;
    if (auto *s = std::get_if<element::Slm>(&e)) {
        j["m"] = s->m;
        j["phi"] = s->phi;
    }
    if (auto *p = std::get_if<element::Projector>(&e)) j["jones"] = jones_json(p->state);
    return j;
}

inline Json config_json(const PipelineConfig &cfg) {
    Json j;
    j["name"] = cfg.name;
    j["grid"] = {{"n", cfg.grid.n}, {"extent", cfg.grid.extent}};
    Json src;
    src["kind"] = source_kind_name(cfg.source.kind);
    if (cfg.source.kind == SourceKind::kBeam) src["jones"] = jones_json(cfg.source.polarization);
    src["mode"] = cfg.source.mode;
    src["waist"] = cfg.source.waist;
    j["source"] = src;
    j["model"] = vortex_model_name(cfg.model);
    j["chain"] = Json::array();
    for (const ElementSpec &e : cfg.chain) j["chain"].push_back(element_json(e));
    j["measurements"] = Json::array();
    for (Measurement m : cfg.measurements) j["measurements"].push_back(measurement_name(m));
    j["images"] = Json::array();
    for (Basis b : cfg.images) j["images"].push_back(basis_name(b));
    j["output_dir"] = cfg.output_dir;
    return j;
}

inline Json report_json(const MeasurementReport &r) {
    Json j;
    j["config"] = config_json(r.config);
    if (r.powers) {
        const auto &p = *r.powers;
        j["projection_powers"] = {{"i_h", p.i_h}, {"i_v", p.i_v}, {"i_d", p.i_d},
                                  {"i_a", p.i_a}, {"i_l", p.i_l}, {"i_r", p.i_r}};
    }
    if (r.stokes_vector) {
        const auto &s = *r.stokes_vector;
        j["stokes"] = {{"s0", s.s0}, {"s1", s.s1}, {"s2", s.s2}, {"s3", s.s3}};
    }
    if (r.dop_value) j["dop"] = *r.dop_value;
    if (r.linear_entropy_value) j["linear_entropy"] = *r.linear_entropy_value;
    if (r.density_matrix) {
        const auto &m = *r.density_matrix;
        auto c = [](Complex z) { return Json::array({z.real(), z.imag()}); };
        j["density_matrix"] = {{"hh", c(m.hh)}, {"hv", c(m.hv)}, {"vh", c(m.vh)}, {"vv", c(m.vv)}};
    }
    if (r.config.wants(Measurement::kPetals)) {
        Json p = Json::object();
        for (const auto &[b, count] : r.petals) p[std::string(basis_name(b))] = count ? Json(*count) : Json(nullptr);
        j["petals"] = p;
    }
    if (!r.image_files.empty()) {
        Json imgs = Json::object();
        for (const auto &[b, file] : r.image_files) imgs[std::string(basis_name(b))] = file;
        j["images"] = imgs;
    }
    return j;
}

/// Report for a multi-row preset.
inline Json preset_report_json(std::string_view preset, const std::vector<MeasurementReport> &rows) {
    Json j;
    j["preset"] = preset;
    j["rows"] = Json::array();
    for (const auto &r : rows) j["rows"].push_back(report_json(r));
    return j;
}

inline std::string dump_json(const Json &j) { return j.dump(2) + "\n"; }

}  // namespace vecvortex
