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

#include "ttsbench/instance.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ttsbench/rng.hpp"

namespace ttsbench {

CouplingInstance generate_instance(const ChimeraGraph& graph, uint64_t seed,
                                   uint64_t id) {
    CouplingInstance inst;
    inst.graph = graph;
    inst.seed = seed;
    inst.id = id;
    inst.couplings.resize(graph.edges.size());
    Xoshiro256 rng(seed);
    for (auto& j : inst.couplings) j = rng.bit() ? int8_t{1} : int8_t{-1};
    return inst;
}

long long energy(const CouplingInstance& inst, const SpinConfig& config) {
    if (config.spins.size() != static_cast<size_t>(inst.graph.N))
        throw std::invalid_argument("energy: config length " +
                                    std::to_string(config.spins.size()) +
                                    " != N " + std::to_string(inst.graph.N));
    long long e = 0;
    for (size_t k = 0; k < inst.graph.edges.size(); ++k) {
        const auto [i, j] = inst.graph.edges[k];
        e -= static_cast<long long>(inst.couplings[k]) * config.spins[i] *
             config.spins[j];
    }
    return e;
}

void write_instance(const CouplingInstance& inst, std::ostream& out) {
    out << "chimera " << inst.graph.L << ' ' << inst.graph.N << ' '
        << inst.seed << '\n';
    for (size_t k = 0; k < inst.graph.edges.size(); ++k)
        out << inst.graph.edges[k].first << ' ' << inst.graph.edges[k].second
            << ' ' << static_cast<int>(inst.couplings[k]) << '\n';
}

void write_instance(const CouplingInstance& inst,
                    const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_instance: cannot open " + path.string());
    write_instance(inst, out);
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw std::invalid_argument("instance parse error at line " +
                             std::to_string(line) + ": " + what);
}

}  // namespace

CouplingInstance read_instance(std::istream& in) {
    std::string line;
    int lineno = 1;
    if (!std::getline(in, line)) parse_fail(1, "missing header");
    std::istringstream hdr(line);
    std::string magic;
    int L = 0, N = 0;
    uint64_t seed = 0;
    if (!(hdr >> magic >> L >> N >> seed) || magic != "chimera")
        parse_fail(1, "expected `chimera L N seed`");
    ChimeraGraph graph;
    try {
        graph = build_chimera(L);
    } catch (const std::invalid_argument& e) {
        parse_fail(1, e.what());
    }
    if (N != graph.N) parse_fail(1, "N does not match 8*L^2");

    // edge -> position in the canonical edge order
    std::map<std::pair<int, int>, size_t> pos;
    for (size_t k = 0; k < graph.edges.size(); ++k) pos[graph.edges[k]] = k;

    CouplingInstance inst;
    inst.graph = graph;
    inst.seed = seed;
    inst.couplings.assign(graph.edges.size(), 0);
    std::vector<bool> seen(graph.edges.size(), false);

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int i = 0, j = 0, J = 0;
        if (!(ls >> i >> j >> J)) parse_fail(lineno, "expected `i j J`");
        std::string trailing;
        if (ls >> trailing) parse_fail(lineno, "trailing tokens");
        if (i < 0 || i >= N || j < 0 || j >= N)
            parse_fail(lineno, "site index out of range");
        if (J != 1 && J != -1) parse_fail(lineno, "coupling must be -1 or 1");
        auto key = std::minmax(i, j);
        auto it = pos.find({key.first, key.second});
        if (it == pos.end()) parse_fail(lineno, "not a chimera edge");
        if (seen[it->second]) parse_fail(lineno, "duplicate edge");
        seen[it->second] = true;
        inst.couplings[it->second] = static_cast<int8_t>(J);
    }
    for (size_t k = 0; k < seen.size(); ++k)
        if (!seen[k])
            throw std::invalid_argument("instance parse error: missing edge (" +
                                     std::to_string(graph.edges[k].first) + "," +
                                     std::to_string(graph.edges[k].second) + ")");
    return inst;
}

CouplingInstance read_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("read_instance: cannot open " + path.string());
    return read_instance(in);
}

Adjacency Adjacency::build(int n, const std::vector<std::pair<int, int>>& edges,
                           const std::vector<int8_t>& couplings) {
    Adjacency adj;
    adj.offset.assign(n + 1, 0);
    for (const auto& [i, j] : edges) {
        ++adj.offset[i + 1];
        ++adj.offset[j + 1];
    }
    for (int i = 0; i < n; ++i) adj.offset[i + 1] += adj.offset[i];
    adj.neighbor.resize(2 * edges.size());
    adj.coupling.resize(2 * edges.size());
    std::vector<int> fill(adj.offset.begin(), adj.offset.end() - 1);
    for (size_t k = 0; k < edges.size(); ++k) {
        const auto [i, j] = edges[k];
        adj.neighbor[fill[i]] = j;
        adj.coupling[fill[i]++] = couplings[k];
        adj.neighbor[fill[j]] = i;
        adj.coupling[fill[j]++] = couplings[k];
    }
    return adj;
}

}  // namespace ttsbench
