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

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "ttsbench/annealers.hpp"

namespace ttsbench {

namespace {

// Process-wide sin/cos lookup tables keyed by size; the proposal angles are
// grid points 2*pi*k/size, so the tables are exact for the states reachable
// in lookup mode.
struct TrigTable {
    std::vector<double> sin_v, cos_v;
    explicit TrigTable(int size) : sin_v(size), cos_v(size) {
        for (int k = 0; k < size; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / size;
            sin_v[k] = std::sin(theta);
            cos_v[k] = std::cos(theta);
        }
    }
};

}  // namespace

MfaState mfa_initial_state(int n) {
    MfaState st;
    st.sin_theta.assign(n, 1.0);  // theta = pi/2
    st.cos_theta.assign(n, 0.0);
    return st;
}

void mfa_sweep(const IsingProblem& problem, MfaState& state, double a, double b,
               double beta, int table_size, Xoshiro256& rng) {
    static thread_local std::unique_ptr<TrigTable> table;
    if (table_size > 0 &&
        (!table || table->sin_v.size() != static_cast<size_t>(table_size)))
        table = std::make_unique<TrigTable>(table_size);

    for (int i = 0; i < problem.n; ++i) {
        const double u = rng.uniform();
        double sin_new, cos_new;
        if (table_size > 0) {
            const int k = static_cast<int>(u * table_size);
            sin_new = table->sin_v[k];
            cos_new = table->cos_v[k];
        } else {
            const double theta = 2.0 * std::numbers::pi * u;
            sin_new = std::sin(theta);
            cos_new = std::cos(theta);
        }
        double field = 0.0;  // sum_j J_ij cos(theta_j)
        for (int q = problem.adj.offset[i]; q < problem.adj.offset[i + 1]; ++q)
            field += problem.adj.coupling[q] *
                     state.cos_theta[problem.adj.neighbor[q]];
        const double dh = -a * (sin_new - state.sin_theta[i]) -
                          b * (cos_new - state.cos_theta[i]) * field;
        if (dh <= 0.0 || rng.uniform() < std::exp(-beta * dh)) {
            state.sin_theta[i] = sin_new;
            state.cos_theta[i] = cos_new;
        }
    }
}

AnnealOutcome mfa_run(const IsingProblem& problem, const MfaSchedule& sched,
                      long long e0, Xoshiro256& rng) {
    if (sched.t_a < 1 || sched.beta <= 0.0 || sched.table_size < 0)
        throw std::invalid_argument("mfa_run: invalid schedule");

    MfaState state = mfa_initial_state(problem.n);
    for (long long k = 1; k <= sched.t_a; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(sched.t_a);
        mfa_sweep(problem, state, 1.0 - t, t, sched.beta, sched.table_size, rng);
    }

    std::vector<int8_t> projected(problem.n);
    for (int i = 0; i < problem.n; ++i)
        projected[i] = state.cos_theta[i] >= 0.0 ? int8_t{1} : int8_t{-1};

    AnnealOutcome out;
    out.final_energy = problem.energy(projected);
    out.success_fraction = out.final_energy == e0 ? 1.0 : 0.0;
    out.sweeps_used = sched.t_a;
    return out;
}

}  // namespace ttsbench
