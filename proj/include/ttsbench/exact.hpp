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

#pragma once

#include <optional>

#include "ttsbench/instance.hpp"

namespace ttsbench {

struct GroundResult {
    long long energy = 0;
    std::optional<SpinConfig> witness;  // one optimal configuration
};

// Exhaustive minimization over all spin configurations, with spin 0 fixed
// (global flip symmetry halves the work). Oracle for validating dp_ground.
//
// `num_sites` restricts the search to sites [0, num_sites) and the edges
// among them (-1 = full instance); used to cross-check the DP on truncated
// instances small enough to enumerate. Throws std::length_error when the
// effective site count exceeds 26.
GroundResult brute_force_ground(const CouplingInstance& inst,
                                int num_sites = -1);

struct DpOptions {
    int max_L = 5;           // frontier table is 2^(4L+4) entries
    int num_cells = -1;      // row-major prefix of cells to solve (-1 = all)
    bool want_witness = false;
};

// Exact ground energy by frontier dynamic programming over unit cells in
// row-major order. The DP state is the 4 vertically-wired spins of each cell
// in the current frontier row (4L bits) plus the horizontally-wired spins of
// the previously processed cell (4 carry bits). All arithmetic is integer.
//
// Throws std::length_error naming the 2^(4L) table size when L exceeds
// opts.max_L. Witness reconstruction stores per-cell back-pointers and is
// refused above L=4 for memory reasons.
GroundResult dp_ground(const CouplingInstance& inst, DpOptions opts = {});

}  // namespace ttsbench
