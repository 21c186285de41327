// Copyright 2026 The ttsbench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttsbench/chimera.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ttsbench {

namespace {

int cell_base(int L, int r, int c) { return 8 * (r * L + c); }

// Offset (0 or 4) of the 4 spins wired to vertical neighbours; alternates
// with cell parity so the two intra-cell sides extend to a global 2-coloring.
int vertical_offset(int r, int c) { return ((r + c) & 1) ? 4 : 0; }
int horizontal_offset(int r, int c) { return 4 - vertical_offset(r, c); }

}  // namespace

ChimeraGraph build_chimera(int L) {
    if (L < 1 || L > 16)
        throw std::invalid_argument("build_chimera: L must be in [1,16], got " +
                                    std::to_string(L));

    ChimeraGraph g;
    g.L = L;
    g.N = 8 * L * L;
    g.edges.reserve(16 * L * L + 8 * L * (L - 1));

    for (int r = 0; r < L; ++r) {
        for (int c = 0; c < L; ++c) {
            const int base = cell_base(L, r, c);
            // K4,4 inside the cell
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    g.edges.emplace_back(base + a, base + 4 + b);
            // 4 couplers to the cell below, unit k to unit k
            if (r + 1 < L) {
                const int nb = cell_base(L, r + 1, c);
                const int vo = vertical_offset(r, c);
                const int nvo = vertical_offset(r + 1, c);
                for (int k = 0; k < 4; ++k)
                    g.edges.emplace_back(base + vo + k, nb + nvo + k);
            }
            // 4 couplers to the cell on the right
            if (c + 1 < L) {
                const int nb = cell_base(L, r, c + 1);
                const int ho = horizontal_offset(r, c);
                const int nho = horizontal_offset(r, c + 1);
                for (int k = 0; k < 4; ++k)
                    g.edges.emplace_back(base + ho + k, nb + nho + k);
            }
        }
    }

    for (auto& e : g.edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

}  // namespace ttsbench
