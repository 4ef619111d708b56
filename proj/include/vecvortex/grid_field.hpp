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

// Complex scalar fields sampled on a square Cartesian window, p = 0
// Laguerre-Gaussian modes and the overlap integrals between them.
//
// All lengths are in units of the reference beam waist. Pixel (i, j) sits at
//   x = (j - n/2 + 0.5) * pitch,  y = (i - n/2 + 0.5) * pitch,
// so for even n no pixel center lands on the vortex core at r = 0.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vecvortex {

using Complex = std::complex<double>;

/// Largest |charge| accepted anywhere in the library.
inline constexpr int kMaxCharge = 16;

inline void check_charge(int m, const char *what = "m") {
    if (std::abs(m) > kMaxCharge) {
        throw std::invalid_argument(std::string(what) + " = " + std::to_string(m) + ": |" + what +
                                    "| must be <= " + std::to_string(kMaxCharge));
    }
}

/// Neumaier-compensated accumulator. Summation order is whatever order add()
/// is called in, so callers iterate row-major to keep results bit-reproducible.
template <typename T>
class CompensatedSum {
  public:
    void add(T value) {
        T t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

  private:
    T sum_{};
    T comp_{};
};

struct GridSpec {
    int n = 256;
    double extent = 5.0;  // half-width of the window, in waists

    double pitch() const { return 2.0 * extent / n; }
    double x(int j) const { return (j - n / 2 + 0.5) * pitch(); }
    double y(int i) const { return (i - n / 2 + 0.5) * pitch(); }
    std::size_t size() const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }

    friend bool operator==(const GridSpec &, const GridSpec &) = default;
};

inline GridSpec make_grid(int n, double extent) {
    if (n < 16 || n % 2 != 0) {
        throw std::invalid_argument("grid.n must be even, >= 16 (got " + std::to_string(n) + ")");
    }
    if (!std::isfinite(extent) || extent < 3.0) {
        throw std::invalid_argument("grid.extent must be >= 3 waists (got " + std::to_string(extent) + ")");
    }
    return GridSpec{n, extent};
}

/// Complex amplitude of one polarization component over a grid.
class ScalarField {
  public:
    /// Zero field.
    explicit ScalarField(GridSpec grid) : grid_(grid), amp_(grid.size(), Complex{}) {}

    ScalarField(GridSpec grid, std::vector<Complex> amp) : grid_(grid), amp_(std::move(amp)) {
        if (amp_.size() != grid_.size()) {
            throw std::invalid_argument("ScalarField: sample count does not match grid");
        }
        for (const Complex &c : amp_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw std::invalid_argument("ScalarField: non-finite amplitude");
            }
        }
    }

    const GridSpec &grid() const { return grid_; }
    int n() const { return grid_.n; }

    Complex &operator()(int i, int j) { return amp_[static_cast<std::size_t>(i) * grid_.n + j]; }
    const Complex &operator()(int i, int j) const { return amp_[static_cast<std::size_t>(i) * grid_.n + j]; }

    std::span<Complex> data() { return amp_; }
    std::span<const Complex> data() const { return amp_; }

    ScalarField &operator*=(Complex s) {
        for (Complex &c : amp_) c *= s;
        return *this;
    }

    ScalarField &operator+=(const ScalarField &other) {
        require_same_grid(other);
        for (std::size_t k = 0; k < amp_.size(); ++k) amp_[k] += other.amp_[k];
        return *this;
    }

    /// Pixelwise product, e.g. applying a phase mask.
    ScalarField &multiply_pixelwise(const ScalarField &mask) {
        require_same_grid(mask);
        for (std::size_t k = 0; k < amp_.size(); ++k) amp_[k] *= mask.amp_[k];
        return *this;
    }

    void require_same_grid(const ScalarField &other) const {
        if (!(grid_ == other.grid_)) {
            throw std::invalid_argument("fields live on different grids");
        }
    }

  private:
    GridSpec grid_;
    std::vector<Complex> amp_;
};

inline ScalarField operator*(Complex s, ScalarField f) { return f *= s; }
inline ScalarField operator+(ScalarField a, const ScalarField &b) { return a += b; }

/// <a, b> = sum conj(a) * b * pitch^2, row-major with compensated summation.
/// The product is spelled out so that inner_product(b, a) is the exact
/// conjugate of inner_product(a, b).
inline Complex inner_product(const ScalarField &a, const ScalarField &b) {
    a.require_same_grid(b);
    CompensatedSum<double> re;
    CompensatedSum<double> im;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t k = 0; k < da.size(); ++k) {
        const double ar = da[k].real(), ai = da[k].imag();
        const double br = db[k].real(), bi = db[k].imag();
        re.add(ar * br + ai * bi);
        im.add(ar * bi - ai * br);
    }
    const double area = a.grid().pitch() * a.grid().pitch();
    return {re.value() * area, im.value() * area};
}

inline double power(const ScalarField &f) {
    CompensatedSum<double> acc;
    for (const Complex &c : f.data()) acc.add(c.real() * c.real() + c.imag() * c.imag());
    return acc.value() * f.grid().pitch() * f.grid().pitch();
}

inline ScalarField normalize(ScalarField f) {
    const double p = power(f);
    if (!(p > 0.0)) {
        throw std::invalid_argument("normalize: field has zero power");
    }
    return f *= 1.0 / std::sqrt(p);
}

/// Unit-modulus azimuthal phase exp(i m atan2(y, x)).
inline ScalarField azimuthal_phase_mask(const GridSpec &grid, int m) {
    check_charge(m);
    ScalarField mask(grid);
    for (int i = 0; i < grid.n; ++i) {
        for (int j = 0; j < grid.n; ++j) {
            mask(i, j) = std::polar(1.0, m * std::atan2(grid.y(i), grid.x(j)));
        }
    }
    return mask;
}

/// p = 0 Laguerre-Gaussian mode of charge m,
///   (r sqrt2 / w)^|m| exp(-r^2 / w^2) exp(i m theta),
/// normalized to unit discrete power.
inline ScalarField lg_mode(const GridSpec &grid, int m, double waist = 1.0) {
    if (!(waist > 0.0) || !std::isfinite(waist)) {
        throw std::invalid_argument("lg_mode: waist must be positive");
    }
    check_charge(m);
    const int order = std::abs(m);
    ScalarField f(grid);
    for (int i = 0; i < grid.n; ++i) {
        const double y = grid.y(i);
        for (int j = 0; j < grid.n; ++j) {
            const double x = grid.x(j);
            const double r2 = (x * x + y * y) / (waist * waist);
            const double radial = std::pow(std::sqrt(2.0 * r2), order) * std::exp(-r2);
            f(i, j) = std::polar(radial, m * std::atan2(y, x));
        }
    }
    return normalize(std::move(f));
}

}  // namespace vecvortex
