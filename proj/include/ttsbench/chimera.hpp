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

#include <utility>
#include <vector>

namespace ttsbench {

// Chimera graph: an L x L grid of K4,4 unit cells with 4 couplers between
// adjacent cells (horizontal and vertical).
//
// Site numbering convention (fixed so instance files are reproducible):
//   cells are row-major, cell (r,c) owns sites 8*(r*L+c) .. 8*(r*L+c)+7;
//   within a cell, sites 0-3 are partition side A and sites 4-7 side B.
// The orientation of each cell alternates with (r+c) parity so that side A
// and side B form the two global bipartition classes: every edge, intra- or
// inter-cell, joins an A site to a B site. Concretely, the 4 spins wired to
// the vertical neighbours are side A in even cells and side B in odd cells
// (and vice versa for horizontal neighbours).
struct ChimeraGraph {
    int L = 0;                              // unit cells per side
    int N = 0;                              // spin count, 8*L*L
    std::vector<std::pair<int, int>> edges; // i < j, sorted lexicographically
};

// Builds the chimera graph for 1 <= L <= 16. Throws std::invalid_argument
// otherwise.
ChimeraGraph build_chimera(int L);

// True if the site is in bipartition side A (sites 0-3 of its cell).
inline bool side_a(int site) { return (site & 7) < 4; }

}  // namespace ttsbench
