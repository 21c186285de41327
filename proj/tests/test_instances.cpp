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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "ttsbench/instance.hpp"
#include "ttsbench/rng.hpp"

using namespace ttsbench;

TEST_CASE("chimera sizes and edge counts") {
    for (int L = 1; L <= 8; ++L) {
        const ChimeraGraph g = build_chimera(L);
        CHECK(g.L == L);
        CHECK(g.N == 8 * L * L);
        // 16 intra-cell edges per cell plus 4 edges per adjacent cell pair
        const size_t expected = 16u * L * L + 8u * L * (L - 1);
        CHECK(g.edges.size() == expected);
    }
    CHECK_THROWS_AS(build_chimera(0), std::invalid_argument);
    CHECK_THROWS_AS(build_chimera(17), std::invalid_argument);
}

TEST_CASE("chimera edges are sorted, unique, in range and bipartite") {
    for (int L : {1, 2, 3, 5}) {
        const ChimeraGraph g = build_chimera(L);
        CHECK(std::is_sorted(g.edges.begin(), g.edges.end()));
        std::set<std::pair<int, int>> seen(g.edges.begin(), g.edges.end());
        CHECK(seen.size() == g.edges.size());
        for (const auto& [i, j] : g.edges) {
            CHECK(i < j);
            CHECK(i >= 0);
            CHECK(j < g.N);
            // the first four sites of every cell form one global side
            CHECK(side_a(i) != side_a(j));
        }
    }
}

TEST_CASE("chimera degrees") {
    const ChimeraGraph g = build_chimera(3);
    std::vector<int> deg(g.N, 0);
    for (const auto& [i, j] : g.edges) {
        ++deg[i];
        ++deg[j];
    }
    // 4 intra-cell neighbors plus 0..2 inter-cell links
    for (int i = 0; i < g.N; ++i) {
        CHECK(deg[i] >= 4);
        CHECK(deg[i] <= 6);
    }
    // interior cells have all inter-cell links present
    int six = 0;
    for (int d : deg) six += d == 6;
    CHECK(six > 0);
}

TEST_CASE("generation is deterministic in the seed") {
    const ChimeraGraph g = build_chimera(2);
    const auto a = generate_instance(g, 42, 0);
    const auto b = generate_instance(g, 42, 7);
    CHECK(a.couplings == b.couplings);  // id does not enter the stream
    const auto c = generate_instance(g, 43, 0);
    CHECK(a.couplings != c.couplings);
    for (int8_t j : a.couplings) CHECK((j == 1 || j == -1));
}

TEST_CASE("coupling signs are unbiased across seeds") {
    const ChimeraGraph g = build_chimera(2);
    long long sum = 0, total = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        const auto inst = generate_instance(g, derive_seed(123, s), s);
        for (int8_t j : inst.couplings) sum += j;
        total += static_cast<long long>(inst.couplings.size());
    }
    const double mean = static_cast<double>(sum) / static_cast<double>(total);
    // sd of the mean is 1/sqrt(total) ~ 0.004; allow 5 sigma
    CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(total)));
}

TEST_CASE("energy of hand-built configurations") {
    const ChimeraGraph g = build_chimera(1);
    CouplingInstance ferro{g, std::vector<int8_t>(g.edges.size(), 1), 0, 0};
    SpinConfig up{std::vector<int8_t>(g.N, 1)};
    CHECK(energy(ferro, up) == -16);  // all 16 bonds satisfied

    // flipping one spin breaks its 4 bonds: -16 + 2*4
    SpinConfig one = up;
    one.spins[0] = -1;
    CHECK(energy(ferro, one) == -8);

    SpinConfig wrong{std::vector<int8_t>(g.N - 1, 1)};
    CHECK_THROWS_AS(energy(ferro, wrong), std::invalid_argument);
}

TEST_CASE("energy is invariant under global spin flip") {
    const ChimeraGraph g = build_chimera(2);
    const auto inst = generate_instance(g, 5, 0);
    Xoshiro256 rng(17);
    SpinConfig cfg{std::vector<int8_t>(g.N)};
    for (auto& s : cfg.spins) s = rng.bit() ? int8_t{1} : int8_t{-1};
    SpinConfig flipped = cfg;
    for (auto& s : flipped.spins) s = static_cast<int8_t>(-s);
    CHECK(energy(inst, cfg) == energy(inst, flipped));
}

TEST_CASE("gauge transformation preserves the energy") {
    const ChimeraGraph g = build_chimera(2);
    const auto inst = generate_instance(g, 9, 0);
    Xoshiro256 rng(33);
    std::vector<int8_t> gauge(g.N);
    for (auto& t : gauge) t = rng.bit() ? int8_t{1} : int8_t{-1};

    CouplingInstance transformed = inst;
    for (size_t k = 0; k < g.edges.size(); ++k)
        transformed.couplings[k] = static_cast<int8_t>(
            inst.couplings[k] * gauge[g.edges[k].first] * gauge[g.edges[k].second]);

    SpinConfig cfg{std::vector<int8_t>(g.N)};
    for (auto& s : cfg.spins) s = rng.bit() ? int8_t{1} : int8_t{-1};
    SpinConfig mapped = cfg;
    for (int i = 0; i < g.N; ++i)
        mapped.spins[i] = static_cast<int8_t>(cfg.spins[i] * gauge[i]);

    CHECK(energy(inst, cfg) == energy(transformed, mapped));
}

TEST_CASE("instance file round trip") {
    const ChimeraGraph g = build_chimera(3);
    const auto inst = generate_instance(g, 77, 4);
    std::stringstream ss;
    write_instance(inst, ss);
    const auto back = read_instance(ss);
    CHECK(back.graph.L == inst.graph.L);
    CHECK(back.graph.N == inst.graph.N);
    CHECK(back.seed == inst.seed);
    CHECK(back.graph.edges == inst.graph.edges);
    CHECK(back.couplings == inst.couplings);
}

TEST_CASE("reader rejects malformed files") {
    const ChimeraGraph g = build_chimera(1);
    const auto inst = generate_instance(g, 1, 0);
    std::stringstream ss;
    write_instance(inst, ss);
    const std::string good = ss.str();

    auto expect_throw = [](const std::string& text) {
        std::stringstream in(text);
        CHECK_THROWS_AS(read_instance(in), std::invalid_argument);
    };

    expect_throw("");                                // empty
    expect_throw("lattice 1 8 0\n0 4 1\n");          // wrong magic
    expect_throw("chimera 1 9 0\n" + good.substr(good.find('\n') + 1));
    expect_throw("chimera 0 0 0\n");                 // bad L

    // coupling out of {-1, +1}: rewrite the first edge line
    const auto hdr_end = good.find('\n');
    const auto edge_end = good.find('\n', hdr_end + 1);
    std::string bad = good.substr(0, hdr_end + 1) + "0 4 2\n" +
                      good.substr(edge_end + 1);
    expect_throw(bad);

    // site out of range
    expect_throw("chimera 1 8 0\n0 9 1\n");

    // duplicate edge: repeat the first edge line in place of the last
    const auto first_line_end = good.find('\n', good.find('\n') + 1);
    const std::string header_and_first = good.substr(0, first_line_end + 1);
    const std::string first_edge = good.substr(good.find('\n') + 1,
                                               first_line_end - good.find('\n'));
    std::string dup = good;
    dup += first_edge;  // 17th line duplicates an edge
    expect_throw(dup);

    // missing edges (truncated file)
    expect_throw(header_and_first);

    // edge not in the chimera graph
    expect_throw("chimera 1 8 0\n0 1 1\n");
}

TEST_CASE("adjacency matches the edge list") {
    const ChimeraGraph g = build_chimera(2);
    const auto inst = generate_instance(g, 11, 0);
    const Adjacency adj = Adjacency::build(g.N, g.edges, inst.couplings);
    CHECK(adj.offset.size() == static_cast<size_t>(g.N + 1));
    CHECK(adj.neighbor.size() == 2 * g.edges.size());
    long long from_adj = 0;
    std::vector<int8_t> ones(g.N, 1);
    for (int i = 0; i < g.N; ++i)
        for (int a = adj.offset[i]; a < adj.offset[i + 1]; ++a)
            from_adj -= adj.coupling[a];  // each edge visited twice
    CHECK(from_adj / 2 == energy(inst, SpinConfig{ones}));
}
