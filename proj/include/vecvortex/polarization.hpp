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

// Jones calculus for the polarization degree of freedom and its pixelwise
// action on two-component vector fields.
//
// Handedness convention: L = (1, i)/sqrt2, R = (1, -i)/sqrt2. Flipping it
// flips the sign of the L - R Stokes component only.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vecvortex/grid_field.hpp"

namespace vecvortex {

struct JonesVector {
    Complex h;
    Complex v;

    double norm_sq() const { return std::norm(h) + std::norm(v); }
    friend bool operator==(const JonesVector &, const JonesVector &) = default;
};

/// <a|b>
inline Complex braket(const JonesVector &a, const JonesVector &b) {
    return std::conj(a.h) * b.h + std::conj(a.v) * b.v;
}

/// Row-major 2x2: [[hh, hv], [vh, vv]].
struct JonesMatrix {
    std::array<Complex, 4> a{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}};

    Complex hh() const { return a[0]; }
    Complex hv() const { return a[1]; }
    Complex vh() const { return a[2]; }
    Complex vv() const { return a[3]; }

    static JonesMatrix identity() { return {}; }

    JonesMatrix adjoint() const { return {{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}}; }

    friend JonesVector operator*(const JonesMatrix &m, const JonesVector &j) {
        return {m.a[0] * j.h + m.a[1] * j.v, m.a[2] * j.h + m.a[3] * j.v};
    }
    friend JonesMatrix operator*(const JonesMatrix &x, const JonesMatrix &y) {
        return {{x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
                 x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]}};
    }
};

enum class Basis { kH, kV, kD, kA, kL, kR };

inline constexpr std::array<Basis, 6> kAllBases{Basis::kH, Basis::kV, Basis::kD,
                                                Basis::kA, Basis::kL, Basis::kR};

inline std::string_view basis_name(Basis b) {
    switch (b) {
        case Basis::kH: return "H";
        case Basis::kV: return "V";
        case Basis::kD: return "D";
        case Basis::kA: return "A";
        case Basis::kL: return "L";
        case Basis::kR: return "R";
    }
    return "?";
}

inline std::optional<Basis> parse_basis(std::string_view name) {
    for (Basis b : kAllBases) {
        if (basis_name(b) == name) return b;
    }
    return std::nullopt;
}

inline JonesVector basis(Basis b) {
    const double s = std::numbers::sqrt2 / 2.0;
    const Complex i{0.0, 1.0};
    switch (b) {
        case Basis::kH: return {1.0, 0.0};
        case Basis::kV: return {0.0, 1.0};
        case Basis::kD: return {s, s};
        case Basis::kA: return {s, -s};
        case Basis::kL: return {s, s * i};
        case Basis::kR: return {s, -s * i};
    }
    throw std::invalid_argument("unknown basis");
}

inline JonesVector basis(std::string_view name) {
    auto b = parse_basis(name);
    if (!b) throw std::invalid_argument("unknown polarization basis '" + std::string(name) + "'");
    return basis(*b);
}

/// Half-wave plate with fast axis at theta from horizontal.
inline JonesMatrix jones_hwp(double theta) {
    const double c = std::cos(2.0 * theta), s = std::sin(2.0 * theta);
    return {{c, s, s, -c}};
}

/// Quarter-wave plate with fast axis at theta from horizontal.
inline JonesMatrix jones_qwp(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex i{0.0, 1.0};
    const Complex off = (1.0 - i) * s * c;
    return {{c * c + i * s * s, off, off, s * s + i * c * c}};
}

/// Ideal analyzer |p><p|.
inline JonesMatrix jones_projector(const JonesVector &p) {
    return {{p.h * std::conj(p.h), p.h * std::conj(p.v), p.v * std::conj(p.h), p.v * std::conj(p.v)}};
}

inline void require_normalized(const JonesVector &p, double tol = 1e-9) {
    if (std::abs(p.norm_sq() - 1.0) > tol) {
        throw std::invalid_argument("Jones vector is not normalized (|h|^2 + |v|^2 = " +
                                    std::to_string(p.norm_sq()) + ")");
    }
}

/// (E_H, E_V) pair over one grid.
class VectorField {
  public:
    VectorField(ScalarField e_h, ScalarField e_v) : e_h_(std::move(e_h)), e_v_(std::move(e_v)) {
        e_h_.require_same_grid(e_v_);
    }

    /// Separable state |pol> |spatial>.
    static VectorField product(const JonesVector &pol, const ScalarField &spatial) {
        return {pol.h * spatial, pol.v * spatial};
    }

    const GridSpec &grid() const { return e_h_.grid(); }
    const ScalarField &e_h() const { return e_h_; }
    const ScalarField &e_v() const { return e_v_; }
    ScalarField &e_h() { return e_h_; }
    ScalarField &e_v() { return e_v_; }

    double total_power() const { return power(e_h_) + power(e_v_); }

  private:
    ScalarField e_h_;
    ScalarField e_v_;
};

inline VectorField apply_jones(const VectorField &f, const JonesMatrix &m) {
    ScalarField h(f.grid()), v(f.grid());
    auto sh = f.e_h().data(), sv = f.e_v().data();
    auto dh = h.data(), dv = v.data();
    for (std::size_t k = 0; k < sh.size(); ++k) {
        dh[k] = m.hh() * sh[k] + m.hv() * sv[k];
        dv[k] = m.vh() * sh[k] + m.vv() * sv[k];
    }
    return {std::move(h), std::move(v)};
}

/// Scalar amplitude transmitted by an ideal analyzer for state p:
/// conj(p.h) E_H + conj(p.v) E_V.
inline ScalarField project(const VectorField &f, const JonesVector &p) {
    require_normalized(p);
    ScalarField out(f.grid());
    const Complex ch = std::conj(p.h), cv = std::conj(p.v);
    auto sh = f.e_h().data(), sv = f.e_v().data();
    auto d = out.data();
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = ch * sh[k] + cv * sv[k];
    return out;
}

}  // namespace vecvortex
