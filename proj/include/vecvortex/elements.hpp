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

// State-preparation optics: spiral phase plate, polarization-selective SLM,
// waveplates, analyzers, and the generation schemes built from them.
//
// Vortex elements come in two flavours.
//
//  * Phase mask: the element multiplies the field by exp(i m theta). This is
//    what a thin SPP does at its own plane; the radial profile is untouched,
//    so a Gaussian becomes exp(i m theta) * Gaussian, which is *not* LG_m.
//  * Mode ladder: the element shifts the OAM ket, |k> -> |k + m>, with |k>
//    realized as the p = 0 mode LG_k. This is how the generated states are
//    written down in ket notation and what run_chain uses by default.

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vecvortex/grid_field.hpp"
#include "vecvortex/polarization.hpp"

namespace vecvortex {

inline constexpr double kDefaultSlmDelay = std::numbers::pi / 2.0;
inline constexpr std::size_t kMaxChainLength = 64;

namespace element {
struct Hwp {
    double theta = 0.0;
    friend bool operator==(const Hwp &, const Hwp &) = default;
};
struct Qwp {
    double theta = 0.0;
    friend bool operator==(const Qwp &, const Qwp &) = default;
};
struct Spp {
    int m = 0;
    friend bool operator==(const Spp &, const Spp &) = default;
};
/// Parallel-aligned LC-SLM: hologram of charge m on H, scalar delay phi on V.
struct Slm {
    int m = 0;
    double phi = kDefaultSlmDelay;
    friend bool operator==(const Slm &, const Slm &) = default;
};
struct Projector {
    JonesVector state;
    friend bool operator==(const Projector &, const Projector &) = default;
};
}  // namespace element

using ElementSpec = std::variant<element::Hwp, element::Qwp, element::Spp, element::Slm, element::Projector>;

inline std::string element_name(const ElementSpec &e) {
    struct {
        std::string operator()(const element::Hwp &) const { return "HWP"; }
        std::string operator()(const element::Qwp &) const { return "QWP"; }
        std::string operator()(const element::Spp &) const { return "SPP"; }
        std::string operator()(const element::Slm &) const { return "SLM"; }
        std::string operator()(const element::Projector &) const { return "Projector"; }
    } visitor;
    return std::visit(visitor, e);
}

/// Throws std::invalid_argument if the element violates its range guards.
inline void validate_element(const ElementSpec &e) {
    struct {
        void operator()(const element::Hwp &w) const { finite(w.theta, "theta"); }
        void operator()(const element::Qwp &w) const { finite(w.theta, "theta"); }
        void operator()(const element::Spp &s) const { check_charge(s.m); }
        void operator()(const element::Slm &s) const {
            check_charge(s.m);
            finite(s.phi, "phi");
        }
        void operator()(const element::Projector &p) const { require_normalized(p.state); }
        static void finite(double v, const char *what) {
            if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
        }
    } visitor;
    std::visit(visitor, e);
}

/// Decomposition of scalar fields onto LG_k, |k| <= kMaxCharge, and the
/// charge-shift operator defined on that span.
class ModeLadder {
  public:
    static constexpr int kModes = 2 * kMaxCharge + 1;
    using Coefficients = std::array<Complex, kModes>;

    explicit ModeLadder(const GridSpec &grid, double waist = 1.0) : grid_(grid), waist_(waist) {
        modes_.reserve(kModes);
        for (int k = -kMaxCharge; k <= kMaxCharge; ++k) modes_.push_back(lg_mode(grid, k, waist));
    }

    const GridSpec &grid() const { return grid_; }
    double waist() const { return waist_; }
    const ScalarField &mode(int k) const { return modes_.at(static_cast<std::size_t>(k + kMaxCharge)); }

    Coefficients decompose(const ScalarField &f) const {
        Coefficients c{};
        for (int k = -kMaxCharge; k <= kMaxCharge; ++k) c[k + kMaxCharge] = inner_product(mode(k), f);
        return c;
    }

    ScalarField synthesize(const Coefficients &c) const {
        ScalarField out(grid_);
        auto d = out.data();
        for (int k = -kMaxCharge; k <= kMaxCharge; ++k) {
            const Complex ck = c[k + kMaxCharge];
            if (ck == Complex{}) continue;
            auto src = mode(k).data();
            for (std::size_t p = 0; p < d.size(); ++p) d[p] += ck * src[p];
        }
        return out;
    }

    /// |k> -> |k + dm> for every mode present. Throws std::domain_error when
    /// f is not (numerically) inside the LG span or a shifted charge leaves
    /// the supported range.
    ScalarField shift(const ScalarField &f, int dm) const {
        check_charge(dm, "dm");
        if (dm == 0) return f;
        const double total = power(f);
        Coefficients c = decompose(f);
        double captured = 0.0;
        for (const Complex &ck : c) captured += std::norm(ck);
        if (std::abs(total - captured) > kSpanTolerance * std::max(total, 1.0)) {
            throw std::domain_error("field is not representable in the p = 0 LG basis; use phase-mask elements");
        }
        Coefficients shifted{};
        for (int k = -kMaxCharge; k <= kMaxCharge; ++k) {
            const Complex ck = c[k + kMaxCharge];
            if (std::norm(ck) <= kNegligible * std::max(total, 1e-300)) continue;
            const int target = k + dm;
            if (std::abs(target) > kMaxCharge) {
                throw std::domain_error("OAM shift moves charge " + std::to_string(k) + " to " +
                                        std::to_string(target) + ", outside |m| <= " +
                                        std::to_string(kMaxCharge));
            }
            shifted[target + kMaxCharge] = ck;
        }
        return synthesize(shifted);
    }

  private:
    static constexpr double kSpanTolerance = 1e-9;
    static constexpr double kNegligible = 1e-24;

    GridSpec grid_;
    double waist_;
    std::vector<ScalarField> modes_;
};

/// SPP as a thin phase mask on both components.
inline VectorField apply_spp(const VectorField &f, int m) {
    check_charge(m);
    if (m == 0) return f;
    const ScalarField mask = azimuthal_phase_mask(f.grid(), m);
    VectorField out = f;
    out.e_h().multiply_pixelwise(mask);
    out.e_v().multiply_pixelwise(mask);
    return out;
}

/// SPP as an OAM ket shift on both components.
inline VectorField apply_spp(const VectorField &f, int m, const ModeLadder &ladder) {
    check_charge(m);
    return {ladder.shift(f.e_h(), m), ladder.shift(f.e_v(), m)};
}

/// SLM with a phase-mask hologram on H; V only picks up exp(i phi).
inline VectorField apply_slm(const VectorField &f, int m_slm, double phi_delay) {
    check_charge(m_slm, "m_slm");
    VectorField out = f;
    if (m_slm != 0) out.e_h().multiply_pixelwise(azimuthal_phase_mask(f.grid(), m_slm));
    out.e_v() *= std::polar(1.0, phi_delay);
    return out;
}

/// SLM with an OAM ket shift on H; V only picks up exp(i phi).
inline VectorField apply_slm(const VectorField &f, int m_slm, double phi_delay, const ModeLadder &ladder) {
    check_charge(m_slm, "m_slm");
    ScalarField v = f.e_v();
    v *= std::polar(1.0, phi_delay);
    return {ladder.shift(f.e_h(), m_slm), std::move(v)};
}

/// (|H>|m_h> + e^{i phi} |V>|m_v>) / sqrt2.
inline VectorField make_ns_state(int m_h, int m_v, double phi, const GridSpec &grid, double waist = 1.0) {
    check_charge(m_h, "m_h");
    check_charge(m_v, "m_v");
    const double s = std::numbers::sqrt2 / 2.0;
    return {s * lg_mode(grid, m_h, waist), std::polar(s, phi) * lg_mode(grid, m_v, waist)};
}

/// Net output of the polarizing Sagnac loop with an SPP of order m: the two
/// counter-propagating arms pick up +m (H) and -m (V).
inline VectorField sagnac_generate(int m, const GridSpec &grid, double waist = 1.0) {
    check_charge(m);
    return make_ns_state(m, -m, 0.0, grid, waist);
}

namespace detail {
template <typename Spp, typename Slm>
VectorField run_chain_impl(const VectorField &input, std::span<const ElementSpec> chain, Spp &&spp, Slm &&slm) {
    if (chain.size() > kMaxChainLength) {
        throw std::invalid_argument("chain has " + std::to_string(chain.size()) + " elements; limit is " +
                                    std::to_string(kMaxChainLength));
    }
    VectorField f = input;
    for (std::size_t idx = 0; idx < chain.size(); ++idx) {
        const ElementSpec &e = chain[idx];
        try {
            validate_element(e);
            if (auto *w = std::get_if<element::Hwp>(&e)) {
                f = apply_jones(f, jones_hwp(w->theta));
            } else if (auto *q = std::get_if<element::Qwp>(&e)) {
                f = apply_jones(f, jones_qwp(q->theta));
            } else if (auto *p = std::get_if<element::Spp>(&e)) {
                f = spp(f, p->m);
            } else if (auto *s = std::get_if<element::Slm>(&e)) {
                f = slm(f, s->m, s->phi);
            } else if (auto *pr = std::get_if<element::Projector>(&e)) {
                f = apply_jones(f, jones_projector(pr->state));
            }
        } catch (const std::invalid_argument &err) {
            throw std::invalid_argument("chain[" + std::to_string(idx) + "] " + element_name(e) + ": " + err.what());
        } catch (const std::domain_error &err) {
            throw std::domain_error("chain[" + std::to_string(idx) + "] " + element_name(e) + ": " + err.what());
        }
    }
    return f;
}
}  // namespace detail

/// Left-to-right application with phase-mask vortex elements.
inline VectorField run_chain(const VectorField &input, std::span<const ElementSpec> chain) {
    return detail::run_chain_impl(
        input, chain, [](const VectorField &f, int m) { return apply_spp(f, m); },
        [](const VectorField &f, int m, double phi) { return apply_slm(f, m, phi); });
}

/// Left-to-right application with OAM-ket-shift vortex elements.
inline VectorField run_chain(const VectorField &input, std::span<const ElementSpec> chain, const ModeLadder &ladder) {
    if (!(ladder.grid() == input.grid())) throw std::invalid_argument("mode ladder built for a different grid");
    return detail::run_chain_impl(
        input, chain, [&](const VectorField &f, int m) { return apply_spp(f, m, ladder); },
        [&](const VectorField &f, int m, double phi) { return apply_slm(f, m, phi, ladder); });
}

/// Dual-SLM arbitrary-state scheme: [SLM(m_first), HWP(45), SLM(m_second), HWP(45)].
/// On a D-polarized Gaussian this leaves m_first on H and m_second on V.
inline std::vector<ElementSpec> dual_slm_chain(int m_first, int m_second) {
    const double quarter = std::numbers::pi / 4.0;
    return {element::Slm{m_first, 0.0}, element::Hwp{quarter}, element::Slm{m_second, 0.0}, element::Hwp{quarter}};
}

/// SPP + SLM scheme fed with an H-polarized Gaussian:
/// [HWP(22.5), SPP(m_spp), SLM(m_slm, phi)].
inline std::vector<ElementSpec> spp_slm_chain(int m_spp, int m_slm, double phi = kDefaultSlmDelay) {
    return {element::Hwp{std::numbers::pi / 8.0}, element::Spp{m_spp}, element::Slm{m_slm, phi}};
}

/// Overlap of two vector fields, <a, b> = <a_H, b_H> + <a_V, b_V>.
inline Complex inner_product(const VectorField &a, const VectorField &b) {
    return inner_product(a.e_h(), b.e_h()) + inner_product(a.e_v(), b.e_v());
}

}  // namespace vecvortex
