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

#include "ttsbench/annealers.hpp"

#include <stdexcept>

namespace ttsbench {

IsingProblem IsingProblem::from_instance(const CouplingInstance& inst) {
    return from_edges(inst.graph.N, inst.graph.edges, inst.couplings);
}

IsingProblem IsingProblem::from_edges(int n,
                                      std::vector<std::pair<int, int>> edges,
                                      std::vector<int8_t> couplings) {
    if (edges.size() != couplings.size())
        throw std::invalid_argument("IsingProblem: couplings/edges mismatch");
    IsingProblem p;
    p.n = n;
    p.edges = std::move(edges);
    p.couplings = std::move(couplings);
    p.adj = Adjacency::build(n, p.edges, p.couplings);
    return p;
}

long long IsingProblem::energy(const std::vector<int8_t>& spins) const {
    long long e = 0;
    for (size_t k = 0; k < edges.size(); ++k)
        e -= static_cast<long long>(couplings[k]) * spins[edges[k].first] *
             spins[edges[k].second];
    return e;
}

}  // namespace ttsbench
