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

// Prints DOP and linear entropy of (|H>|m_h> + e^{i phi}|V>|m_v>)/sqrt2 for a
// small range of charges, plus the D-projection petal count.

#include <cstdio>
#include <numbers>

#include "vecvortex/vecvortex.hpp"

int main() {
    using namespace vecvortex;
    const GridSpec grid = make_grid(128, 5.0);
    std::printf("%5s %5s %10s %10s %7s\n", "m_h", "m_v", "DOP", "S_L", "petals");
    for (int m_h = -2; m_h <= 2; ++m_h) {
        for (int m_v : {-2, 2}) {
            const VectorField f = make_ns_state(m_h, m_v, std::numbers::pi / 2, grid);
            const double d = dop(stokes(projection_powers(f)));
            const int petals = count_petals(intensity_image(f, basis(Basis::kD)));
            std::printf("%5d %5d %10.6f %10.6f %7d\n", m_h, m_v, d, linear_entropy(d), petals);
        }
    }
}
