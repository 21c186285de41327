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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ttsbench/chimera.hpp"

namespace ttsbench {

struct SpinConfig {
    std::vector<int8_t> spins;  // each strictly -1 or +1
};

// A chimera graph plus random +-1 couplings; H = -sum_{<ij>} J_ij s_i s_j.
struct CouplingInstance {
    ChimeraGraph graph;
    std::vector<int8_t> couplings;  // per edge, in graph.edges order
    uint64_t seed = 0;              // reproducibility token
    uint64_t id = 0;                // index within a batch
};

// Draws each coupling independently +-1 with probability 1/2 from
// xoshiro256++ seeded (via SplitMix64) by `seed`. Same (graph, seed) yields
// identical couplings.
CouplingInstance generate_instance(const ChimeraGraph& graph, uint64_t seed,
                                   uint64_t id = 0);

// Exact integer energy -sum_edges J_ij s_i s_j. Throws std::invalid_argument
// on config length mismatch.
long long energy(const CouplingInstance& inst, const SpinConfig& config);

// Instance file format (text): header `chimera L N seed`, then one line per
// edge `i j J` with J in {-1,1}, edges in lexicographic order.
void write_instance(const CouplingInstance& inst, std::ostream& out);
void write_instance(const CouplingInstance& inst,
                    const std::filesystem::path& path);

// Throws std::runtime_error with the offending line number on malformed
// input, out-of-range indices, non +-1 couplings, or duplicate edges.
CouplingInstance read_instance(std::istream& in);
CouplingInstance read_instance(const std::filesystem::path& path);

// Per-site neighbour lists (CSR) with coupling values, for O(degree) local
// field computation in the annealer inner loops. Immutable once built.
struct Adjacency {
    std::vector<int> offset;    // size n+1
    std::vector<int> neighbor;  // size 2*edges
    std::vector<int8_t> coupling;

    static Adjacency build(int n, const std::vector<std::pair<int, int>>& edges,
                           const std::vector<int8_t>& couplings);

    int degree(int site) const { return offset[site + 1] - offset[site]; }
};

}  // namespace ttsbench
