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

// 16-bit binary PGM: "P5\n<n> <n>\n65535\n" then n*n big-endian samples,
// row-major starting at image row 0, sample = round(65535 * intensity).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vecvortex/measurement.hpp"

namespace vecvortex {

inline std::vector<std::uint8_t> encode_pgm(const Image &img) {
    const std::string header = "P5\n" + std::to_string(img.n) + " " + std::to_string(img.n) + "\n65535\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + 2 * img.pixels.size());
    for (double v : img.pixels) {
        const double clamped = std::clamp(v, 0.0, 1.0);
        const auto sample = static_cast<std::uint16_t>(std::lround(65535.0 * clamped));
        out.push_back(static_cast<std::uint8_t>(sample >> 8));
        out.push_back(static_cast<std::uint8_t>(sample & 0xff));
    }
    return out;
}

inline void write_pgm(const Image &img, const std::filesystem::path &path) {
    const auto bytes = encode_pgm(img);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    os.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw std::runtime_error("write failed for '" + path.string() + "'");
}

/// Reads back what write_pgm produces (square, maxval 65535) as raw samples.
inline std::vector<std::uint16_t> read_pgm_samples(const std::filesystem::path &path, int &n) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    is >> magic >> w >> h >> maxval;
    is.get();
    if (magic != "P5" || w != h || maxval != 65535) throw std::runtime_error("'" + path.string() + "' is not a 16-bit square PGM");
    n = w;
    std::vector<std::uint16_t> samples(static_cast<std::size_t>(w) * h);
    for (auto &s : samples) {
        const int hi = is.get();
        const int lo = is.get();
        if (lo < 0) throw std::runtime_error("truncated PGM '" + path.string() + "'");
        s = static_cast<std::uint16_t>((hi << 8) | lo);
    }
    return samples;
}

}  // namespace vecvortex
