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

#include "ttsbench/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ttsbench {

GroundResult brute_force_ground(const CouplingInstance& inst, int num_sites) {
    const int n = num_sites < 0 ? inst.graph.N : num_sites;
    if (n < 1 || n > inst.graph.N)
        throw std::invalid_argument("brute_force_ground: bad num_sites");
    if (n > 26)
        throw std::length_error("brute_force_ground: " + std::to_string(n) +
                                " sites exceed the 26-site limit");

    // adjacency restricted to sites < n
    std::vector<std::pair<int, int>> edges;
    std::vector<int8_t> js;
    for (size_t k = 0; k < inst.graph.edges.size(); ++k)
        if (inst.graph.edges[k].second < n) {
            edges.push_back(inst.graph.edges[k]);
            js.push_back(inst.couplings[k]);
        }
    const Adjacency adj = Adjacency::build(n, edges, js);

    std::vector<int8_t> spins(n, 1);
    long long e = 0;
    for (size_t k = 0; k < edges.size(); ++k) e -= js[k];

    long long best = e;
    std::vector<int8_t> best_spins = spins;

    // Gray-code walk over spins 1..n-1 with spin 0 fixed to +1.
    const uint64_t total = n > 1 ? (uint64_t{1} << (n - 1)) : 1;
    for (uint64_t g = 1; g < total; ++g) {
        const int i = std::countr_zero(g) + 1;
        long long h = 0;
        for (int a = adj.offset[i]; a < adj.offset[i + 1]; ++a)
            h += static_cast<long long>(adj.coupling[a]) * spins[adj.neighbor[a]];
        e += 2 * spins[i] * h;
        spins[i] = static_cast<int8_t>(-spins[i]);
        if (e < best) {
            best = e;
            best_spins = spins;
        }
    }

    GroundResult res;
    res.energy = best;
    SpinConfig w;
    w.spins = std::move(best_spins);
    w.spins.resize(inst.graph.N, 1);  // untouched sites, if truncated
    res.witness = std::move(w);
    return res;
}

namespace {

constexpr int32_t kInf = std::numeric_limits<int32_t>::max() / 4;

inline int spin_of(int nibble, int k) { return (nibble >> k) & 1 ? -1 : 1; }

// Must match the numbering convention in build_chimera.
inline int vertical_offset(int r, int c) { return ((r + c) & 1) ? 4 : 0; }

struct CellTables {
    // energies of the cell-local edge groups as functions of 4-bit spin
    // patterns: intra[v][h], up[v_above][v], left[h_left][h]
    int32_t intra[16][16];
    int32_t up[16][16];
    int32_t left[16][16];
};

class CouplingLookup {
  public:
    explicit CouplingLookup(const CouplingInstance& inst) : inst_(inst) {}

    int operator()(int i, int j) const {
        if (i > j) std::swap(i, j);
        const auto& edges = inst_.graph.edges;
        auto it = std::lower_bound(edges.begin(), edges.end(),
                                   std::make_pair(i, j));
        if (it == edges.end() || *it != std::make_pair(i, j))
            throw std::logic_error("dp_ground: edge lookup failed");
        return inst_.couplings[it - edges.begin()];
    }

  private:
    const CouplingInstance& inst_;
};

CellTables make_tables(const CouplingInstance& inst, int r, int c) {
    const int L = inst.graph.L;
    const int base = 8 * (r * L + c);
    const int vo = vertical_offset(r, c);
    const int ho = 4 - vo;
    const CouplingLookup J(inst);

    CellTables t{};
    // intra-cell K4,4: side A (offset 0) index a vs side B (offset 4) index b
    int jab[4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) jab[a][b] = J(base + a, base + 4 + b);
    for (int v = 0; v < 16; ++v)
        for (int h = 0; h < 16; ++h) {
            int32_t e = 0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    const int sa = vo == 0 ? spin_of(v, a) : spin_of(h, a);
                    const int sb = vo == 0 ? spin_of(h, b) : spin_of(v, b);
                    e -= jab[a][b] * sa * sb;
                }
            t.intra[v][h] = e;
        }

    if (r > 0) {
        const int ubase = 8 * ((r - 1) * L + c);
        const int uvo = vertical_offset(r - 1, c);
        int jk[4];
        for (int k = 0; k < 4; ++k) jk[k] = J(ubase + uvo + k, base + vo + k);
        for (int va = 0; va < 16; ++va)
            for (int v = 0; v < 16; ++v) {
                int32_t e = 0;
                for (int k = 0; k < 4; ++k)
                    e -= jk[k] * spin_of(va, k) * spin_of(v, k);
                t.up[va][v] = e;
            }
    }

    if (c > 0) {
        const int lbase = 8 * (r * L + c - 1);
        const int lho = 4 - vertical_offset(r, c - 1);
        int jk[4];
        for (int k = 0; k < 4; ++k) jk[k] = J(lbase + lho + k, base + ho + k);
        for (int hl = 0; hl < 16; ++hl)
            for (int h = 0; h < 16; ++h) {
                int32_t e = 0;
                for (int k = 0; k < 4; ++k)
                    e -= jk[k] * spin_of(hl, k) * spin_of(h, k);
                t.left[hl][h] = e;
            }
    }
    return t;
}

}  // namespace

GroundResult dp_ground(const CouplingInstance& inst, DpOptions opts) {
    const int L = inst.graph.L;
    if (L > opts.max_L)
        throw std::length_error(
            "dp_ground: L=" + std::to_string(L) + " needs a 2^" +
            std::to_string(4 * L) + "-entry frontier table, over the limit");
    const int num_cells = opts.num_cells < 0 ? L * L : opts.num_cells;
    if (num_cells < 1 || num_cells > L * L)
        throw std::invalid_argument("dp_ground: bad num_cells");
    const bool full = num_cells == L * L;
    if (opts.want_witness && !full)
        throw std::invalid_argument("dp_ground: witness needs the full instance");
    if (opts.want_witness && L > 4)
        throw std::length_error("dp_ground: witness back-pointers limited to L<=4");

    const int fb = 4 * L;  // frontier bits; carry nibble sits above them
    const size_t nstates = size_t{1} << (fb + 4);
    const size_t fmask = (size_t{1} << fb) - 1;

    std::vector<int32_t> dp(nstates, kInf), tmp(nstates), next(nstates);
    dp[0] = 0;  // frontier empty, carry 0

    std::vector<std::vector<uint8_t>> arg_a, arg_b;  // [cell][state]
    std::vector<std::vector<uint8_t>> proj_arg;      // [row][frontier]
    if (opts.want_witness) {
        arg_a.assign(num_cells, {});
        arg_b.assign(num_cells, {});
    }

    for (int cell = 0; cell < num_cells; ++cell) {
        const int r = cell / L, c = cell % L;
        const CellTables t = make_tables(inst, r, c);
        const int shift = 4 * c;
        if (opts.want_witness) {
            arg_a[cell].assign(nstates, 0);
            arg_b[cell].assign(nstates, 0);
        }

        // Pass A: retire the frontier nibble of column c (the V spins of the
        // cell above) and install this cell's V spins in its place.
        const size_t hi_count = nstates >> (shift + 4);
        const size_t lo_count = size_t{1} << shift;
        for (size_t hi = 0; hi < hi_count; ++hi) {
            const size_t hibits = hi << (shift + 4);
            for (size_t lo = 0; lo < lo_count; ++lo) {
                const size_t base = hibits | lo;
                int32_t in[16];
                for (int va = 0; va < 16; ++va)
                    in[va] = dp[base | (static_cast<size_t>(va) << shift)];
                for (int v = 0; v < 16; ++v) {
                    int32_t best = kInf;
                    int bva = 0;
                    for (int va = 0; va < 16; ++va) {
                        if (in[va] >= kInf) continue;
                        const int32_t e = in[va] + (r > 0 ? t.up[va][v] : 0);
                        if (e < best) {
                            best = e;
                            bva = va;
                        }
                    }
                    const size_t out = base | (size_t{v} << shift);
                    tmp[out] = best;
                    if (opts.want_witness) arg_a[cell][out] = uint8_t(bva);
                }
            }
        }

        // Pass B: retire the carry (H spins of the left cell), pay the intra
        // K4,4 and horizontal edges, install this cell's H spins as carry.
        for (size_t f = 0; f <= fmask; ++f) {
            const int v = int(f >> shift) & 15;
            int32_t in[16];
            for (int hl = 0; hl < 16; ++hl)
                in[hl] = tmp[f | (static_cast<size_t>(hl) << fb)];
            for (int h = 0; h < 16; ++h) {
                int32_t best = kInf;
                int bhl = 0;
                for (int hl = 0; hl < 16; ++hl) {
                    if (in[hl] >= kInf) continue;
                    const int32_t e = in[hl] + (c > 0 ? t.left[hl][h] : 0);
                    if (e < best) {
                        best = e;
                        bhl = hl;
                    }
                }
                if (best < kInf) best += t.intra[v][h];
                const size_t out = f | (static_cast<size_t>(h) << fb);
                next[out] = best;
                if (opts.want_witness) arg_b[cell][out] = uint8_t(bhl);
            }
        }
        dp.swap(next);

        // End of row: the carry has no right neighbour, fold it away.
        if (c == L - 1 && cell + 1 < num_cells) {
            if (opts.want_witness) proj_arg.emplace_back(fmask + 1, 0);
            for (size_t f = 0; f <= fmask; ++f) {
                int32_t best = kInf;
                int bh = 0;
                for (int h = 0; h < 16; ++h) {
                    const int32_t e = dp[f | (static_cast<size_t>(h) << fb)];
                    if (e < best) {
                        best = e;
                        bh = h;
                    }
                }
                next[f] = best;
                if (opts.want_witness) proj_arg.back()[f] = uint8_t(bh);
            }
            for (size_t f = 0; f <= fmask; ++f) {
                dp[f] = next[f];
                for (int h = 1; h < 16; ++h) dp[f | (static_cast<size_t>(h) << fb)] = kInf;
            }
        }
    }

    size_t best_idx = 0;
    for (size_t i = 1; i < nstates; ++i)
        if (dp[i] < dp[best_idx]) best_idx = i;

    GroundResult res;
    res.energy = dp[best_idx];

    if (opts.want_witness) {
        std::vector<int8_t> spins(inst.graph.N, 1);
        size_t idx = best_idx;
        int rows_projected = int(proj_arg.size());
        for (int cell = num_cells - 1; cell >= 0; --cell) {
            const int r = cell / L, c = cell % L;
            const int shift = 4 * c;
            const int vo = vertical_offset(r, c);
            const int base = 8 * cell;
            const int v = int(idx >> shift) & 15;
            const int h = int(idx >> fb) & 15;
            for (int k = 0; k < 4; ++k) {
                spins[base + vo + k] = int8_t(spin_of(v, k));
                spins[base + (4 - vo) + k] = int8_t(spin_of(h, k));
            }
            const int hl = arg_b[cell][idx];
            size_t pre = (idx & fmask) | (static_cast<size_t>(hl) << fb);
            const int va = arg_a[cell][pre];
            pre = (pre & ~(size_t{15} << shift)) | (static_cast<size_t>(va) << shift);
            idx = pre;
            // undo the row-end projection that preceded this cell
            if (c == 0 && cell > 0) {
                --rows_projected;
                const size_t f = idx & fmask;
                const int ph = proj_arg[rows_projected][f];
                idx = f | (static_cast<size_t>(ph) << fb);
            }
        }
        SpinConfig w;
        w.spins = std::move(spins);
        res.witness = std::move(w);
    }
    return res;
}

}  // namespace ttsbench
