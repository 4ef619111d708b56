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

// Polarization-projection measurements and the non-separability metrics
// derived from them, plus an independent route through the reduced
// polarization density matrix.
//
// Stokes labels follow the analyzer pairs
//   S1 = I_D - I_A,  S2 = I_L - I_R,  S3 = I_H - I_V,
// which permutes the textbook assignment. DOP and linear entropy do not care.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "vecvortex/grid_field.hpp"
#include "vecvortex/polarization.hpp"

namespace vecvortex {

/// Analyzer powers normalized by the total field power.
struct ProjectionPowers {
    double i_h = 0, i_v = 0, i_d = 0, i_a = 0, i_l = 0, i_r = 0;

    double get(Basis b) const {
        switch (b) {
            case Basis::kH: return i_h;
            case Basis::kV: return i_v;
            case Basis::kD: return i_d;
            case Basis::kA: return i_a;
            case Basis::kL: return i_l;
            case Basis::kR: return i_r;
        }
        return 0.0;
    }
};

struct StokesVector {
    double s0 = 1, s1 = 0, s2 = 0, s3 = 0;
};

/// Reduced 2x2 polarization matrix, spatial DoF traced out.
struct PolDensityMatrix {
    Complex hh, hv, vh, vv;

    Complex trace() const { return hh + vv; }
    /// Tr(rho^2) for Hermitian rho.
    double purity() const { return std::norm(hh) + std::norm(vv) + 2.0 * std::real(hv * vh); }
};

inline ProjectionPowers projection_powers(const VectorField &f) {
    const double total = f.total_power();
    if (!(total > 0.0)) throw std::invalid_argument("projection_powers: field has zero power");
    auto measure = [&](Basis b) { return power(project(f, basis(b))) / total; };
    return {measure(Basis::kH), measure(Basis::kV), measure(Basis::kD),
            measure(Basis::kA), measure(Basis::kL), measure(Basis::kR)};
}

inline StokesVector stokes(const ProjectionPowers &p) {
    const double s0 = p.i_h + p.i_v;
    if (!(s0 > 0.0)) throw std::invalid_argument("stokes: S0 = 0");
    constexpr double kPairTol = 1e-9;
    if (std::abs((p.i_d + p.i_a) - s0) > kPairTol * s0 || std::abs((p.i_l + p.i_r) - s0) > kPairTol * s0) {
        throw std::invalid_argument("stokes: analyzer pairs do not sum to the same total");
    }
    return {1.0, (p.i_d - p.i_a) / s0, (p.i_l - p.i_r) / s0, (p.i_h - p.i_v) / s0};
}

/// Degree of polarization of an S0-normalized Stokes vector, clamped to [0, 1].
inline double dop(const StokesVector &s) {
    const double raw = std::sqrt(s.s1 * s.s1 + s.s2 * s.s2 + s.s3 * s.s3) / s.s0;
    return std::clamp(raw, 0.0, 1.0);
}

/// S_L = 1 - DOP^2.
inline double linear_entropy(double dop_value) {
    if (!(dop_value >= 0.0 && dop_value <= 1.0)) {
        throw std::invalid_argument("linear_entropy: DOP must lie in [0, 1]");
    }
    return 1.0 - dop_value * dop_value;
}

inline PolDensityMatrix reduced_polarization_matrix(const VectorField &f) {
    const double total = f.total_power();
    if (!(total > 0.0)) throw std::invalid_argument("reduced_polarization_matrix: field has zero power");
    const Complex hv = inner_product(f.e_v(), f.e_h()) / total;
    return {power(f.e_h()) / total, hv, std::conj(hv), power(f.e_v()) / total};
}

/// DOP = sqrt(2 Tr(rho^2) - 1), evaluated as sqrt((rho_hh - rho_vv)^2 + 4 |rho_hv|^2),
/// which is the same quantity at unit trace but does not lose all precision
/// to cancellation near DOP = 0.
inline double dop_from_matrix(const PolDensityMatrix &rho) {
    constexpr double kTol = 1e-9;
    if (std::abs(rho.trace() - 1.0) > kTol || std::abs(rho.hv - std::conj(rho.vh)) > kTol ||
        std::abs(rho.hh.imag()) > kTol || std::abs(rho.vv.imag()) > kTol) {
        throw std::invalid_argument("dop_from_matrix: not a trace-1 Hermitian matrix");
    }
    const double det = rho.hh.real() * rho.vv.real() - std::norm(rho.hv);
    if (det < -kTol) throw std::invalid_argument("dop_from_matrix: matrix is not positive semidefinite");
    const double diag = rho.hh.real() - rho.vv.real();
    return std::min(1.0, std::sqrt(diag * diag + 4.0 * std::norm(rho.hv)));
}

/// Real n x n image, row-major, row 0 first (smallest y).
struct Image {
    int n = 0;
    std::vector<double> pixels;

    double operator()(int i, int j) const { return pixels[static_cast<std::size_t>(i) * n + j]; }
    double max() const { return pixels.empty() ? 0.0 : *std::max_element(pixels.begin(), pixels.end()); }
};

/// |project(f, p)|^2, scaled so the brightest pixel is 1. A dark port gives
/// an all-zero image.
inline Image intensity_image(const VectorField &f, const JonesVector &p) {
    const ScalarField amp = project(f, p);
    Image img{f.grid().n, std::vector<double>(f.grid().size())};
    auto src = amp.data();
    for (std::size_t k = 0; k < src.size(); ++k) img.pixels[k] = std::norm(src[k]);
    const double peak = img.max();
    if (peak > 0.0) {
        for (double &v : img.pixels) v /= peak;
    }
    return img;
}

// Petal analysis ------------------------------------------------------------

inline constexpr int kRingSamples = 720;
inline constexpr double kPetalThreshold = 0.5;
inline constexpr double kUniformRatio = 1.2;

/// Bilinear sample at pixel-space coordinates (row, col); zero outside.
inline double sample_bilinear(const Image &img, double row, double col) {
    const int i0 = static_cast<int>(std::floor(row));
    const int j0 = static_cast<int>(std::floor(col));
    const double fr = row - i0, fc = col - j0;
    auto at = [&](int i, int j) { return (i < 0 || j < 0 || i >= img.n || j >= img.n) ? 0.0 : img(i, j); };
    return (1 - fr) * ((1 - fc) * at(i0, j0) + fc * at(i0, j0 + 1)) +
           fr * ((1 - fc) * at(i0 + 1, j0) + fc * at(i0 + 1, j0 + 1));
}

/// Intensity on a circle of radius r (pixels) about the window center, at
/// angles 2 pi k / samples measured from +x towards +y.
inline std::vector<double> sample_circle(const Image &img, double radius, int samples = kRingSamples) {
    const double c = img.n / 2.0 - 0.5;
    std::vector<double> out(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double t = 2.0 * std::numbers::pi * k / samples;
        out[static_cast<std::size_t>(k)] = sample_bilinear(img, c + radius * std::sin(t), c + radius * std::cos(t));
    }
    return out;
}

struct RingProfile {
    double radius = 0;  // pixels
    std::vector<double> samples;
};

namespace detail {
inline bool ring_is_uniform(const std::vector<double> &s) {
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    return *lo > 0.0 && *hi / *lo < kUniformRatio;
}
}  // namespace detail

/// Ring used for petal analysis. Circles are probed in half-pixel radius
/// steps. The brightest azimuthally averaged circle is taken unless it is
/// uniform; then the circle with the largest azimuthal contrast is used, which
/// finds the lobes of superpositions whose bright core is a Gaussian.
inline RingProfile ring_profile(const Image &img) {
    if (img.n <= 0 || !(img.max() > 0.0)) throw std::invalid_argument("ring analysis on an all-zero image");
    RingProfile brightest, contrast;
    double best_mean = -1.0, best_contrast = -1.0;
    for (int k = 1; k < img.n - 1; ++k) {
        const double r = 0.5 * k;
        auto ring = sample_circle(img, r);
        CompensatedSum<double> acc;
        for (double v : ring) acc.add(v);
        const double mean = acc.value() / static_cast<double>(ring.size());
        const auto [lo, hi] = std::minmax_element(ring.begin(), ring.end());
        const double c = *hi - *lo;
        if (c > best_contrast) {
            best_contrast = c;
            contrast = {r, ring};
        }
        if (mean > best_mean) {
            best_mean = mean;
            brightest = {r, std::move(ring)};
        }
    }
    if (!detail::ring_is_uniform(brightest.samples)) return brightest;
    return detail::ring_is_uniform(contrast.samples) ? brightest : contrast;
}

/// Number of bright lobes around the analysis ring; 0 for a uniform ring.
/// A lobe is a cyclic run of samples above half the ring maximum that
/// contains a local maximum, so interpolation ripple on a lobe's crest is not
/// counted twice.
inline int count_petals(const Image &img) {
    const RingProfile ring = ring_profile(img);
    const auto &s = ring.samples;
    if (detail::ring_is_uniform(s)) return 0;
    const double hi = *std::max_element(s.begin(), s.end());
    const std::size_t n = s.size();
    auto above = [&](std::size_t k) { return s[k % n] > kPetalThreshold * hi; };
    // Start scanning just after a sample below threshold so no run wraps.
    std::size_t start = 0;
    while (start < n && above(start)) ++start;
    if (start == n) {
        // Shallow modulation: every sample is above threshold.
        int peaks = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (s[k] > s[(k + n - 1) % n] && s[k] >= s[(k + 1) % n]) ++peaks;
        }
        return peaks;
    }
    int petals = 0;
    bool in_run = false, has_peak = false;
    for (std::size_t off = 1; off <= n; ++off) {
        const std::size_t k = (start + off) % n;
        if (above(k)) {
            in_run = true;
            const double prev = s[(k + n - 1) % n], next = s[(k + 1) % n];
            if (s[k] > prev && s[k] >= next) has_peak = true;
        } else if (in_run) {
            petals += has_peak ? 1 : 0;
            in_run = has_peak = false;
        }
    }
    if (in_run && has_peak) ++petals;
    return petals;
}

/// Rotation (radians, in (-pi, pi]) that best carries ring profile a onto b:
/// b(theta) ~ a(theta - shift). Circular cross-correlation with a parabolic
/// sub-sample refinement of the peak.
inline double ring_rotation(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("ring_rotation: profile size mismatch");
    const int n = static_cast<int>(a.size());
    std::vector<double> corr(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        CompensatedSum<double> acc;
        for (int k = 0; k < n; ++k) acc.add(a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>((k + s) % n)]);
        corr[static_cast<std::size_t>(s)] = acc.value();
    }
    const int peak = static_cast<int>(std::max_element(corr.begin(), corr.end()) - corr.begin());
    const double cm = corr[static_cast<std::size_t>((peak + n - 1) % n)];
    const double c0 = corr[static_cast<std::size_t>(peak)];
    const double cp = corr[static_cast<std::size_t>((peak + 1) % n)];
    const double denom = cm - 2.0 * c0 + cp;
    const double frac = denom != 0.0 ? 0.5 * (cm - cp) / denom : 0.0;
    double shift = 2.0 * std::numbers::pi * (peak + frac) / n;
    if (shift > std::numbers::pi) shift -= 2.0 * std::numbers::pi;
    return shift;
}

}  // namespace vecvortex
