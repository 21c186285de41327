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

#include <bit>
#include <cmath>
#include <stdexcept>

#include "ttsbench/annealers.hpp"

namespace ttsbench {

SqaCouplings sqa_effective_couplings(const SqaSchedule& sched, long long k) {
    const double t = static_cast<double>(k) / static_cast<double>(sched.t_a);
    const double a = 1.0 - t;
    const double b = t;
    SqaCouplings c;
    c.spatial = sched.beta / sched.num_slices * b;
    const double arg = sched.beta * a / sched.num_slices;
    // -0.5*ln tanh diverges as A -> 0; clamp keeps the bond probability at 1
    // to machine precision without overflow
    c.jperp = arg > 0.0 ? std::min(sched.jperp_cap, -0.5 * std::log(std::tanh(arg)))
                        : sched.jperp_cap;
    return c;
}

AnnealOutcome sqa_run(const IsingProblem& problem, const SqaSchedule& sched,
                      long long e0, Xoshiro256& rng) {
    const int m = sched.num_slices;
    if (sched.t_a < 1 || sched.beta <= 0.0 || m < 2 || m > 64)
        throw std::invalid_argument("sqa_run: invalid schedule");

    const uint64_t ring = m == 64 ? ~uint64_t{0} : (uint64_t{1} << m) - 1;

    // World lines packed one bit per slice (bit = 1 means spin -1). At t=0
    // the driver ground state is x-polarized: each site random but uniform
    // across slices.
    std::vector<uint64_t> lines(problem.n);
    for (auto& x : lines) x = rng.bit() ? ring : 0;

    for (long long k = 1; k <= sched.t_a; ++k) {
        const SqaCouplings cpl = sqa_effective_couplings(sched, k);
        const double p_bond = 1.0 - std::exp(-2.0 * cpl.jperp);
        for (int i = 0; i < problem.n; ++i) {
            const uint64_t xi = lines[i];
            const int off = problem.adj.offset[i];
            const int deg = problem.adj.offset[i + 1] - off;
            auto spatial_de = [&](uint64_t mask) {
                // flipping the slices in `mask`: dE = 2*K*sum_j J_ij *
                // sum_{slice in mask} s_i s_j, with s_i s_j = +1 iff bits equal
                const int count = std::popcount(mask);
                long long agree = 0;
                for (int a = 0; a < deg; ++a) {
                    const uint64_t diff = (xi ^ lines[problem.adj.neighbor[off + a]]) & mask;
                    agree += problem.adj.coupling[off + a] *
                             (count - 2 * std::popcount(diff));
                }
                return 2.0 * cpl.spatial * static_cast<double>(agree);
            };
            sqa_ring_update(lines[i], m, p_bond, spatial_de, rng);
        }
    }

    // Per-slice classical readout under H_P.
    std::vector<long long> slice_energy(m, 0);
    for (size_t k = 0; k < problem.edges.size(); ++k) {
        const uint64_t diff = lines[problem.edges[k].first] ^
                              lines[problem.edges[k].second];
        const long long j = problem.couplings[k];
        for (int s = 0; s < m; ++s)
            slice_energy[s] -= ((diff >> s) & 1) ? -j : j;
    }

    AnnealOutcome out;
    out.sweeps_used = sched.t_a;
    out.final_energy = slice_energy[0];
    int hits = 0;
    for (int s = 0; s < m; ++s) {
        out.final_energy = std::min(out.final_energy, slice_energy[s]);
        if (slice_energy[s] == e0) ++hits;
    }
    out.success_fraction = static_cast<double>(hits) / m;
    return out;
}

}  // namespace ttsbench
